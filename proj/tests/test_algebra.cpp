#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "tautilt/algebra.hpp"

using namespace tautilt;

namespace {

std::vector<std::size_t> word(const AlgebraElement& e) {
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < e.coeffs.size(); ++i)
    if (e.coeffs[i]) support.push_back(i);
  return support;
}

}  // namespace

TEST_CASE("path algebra of one arrow has basis e,e,arrow") {
  AlgebraPtr a = fixtures::algebra_a();
  REQUIRE(a->dim() == 3);
  REQUIRE(a->loewy_length() == 2);
  REQUIRE(a->basis()[0].arrows.empty());
  REQUIRE(a->basis()[1].arrows.empty());
  REQUIRE(a->basis()[2].arrows == std::vector<std::size_t>{0});
  REQUIRE(a->trivial_basis(0) == 0);
  REQUIRE(a->arrow_basis(0) == 2);
  REQUIRE(a->pair_basis(0, 1) == std::vector<std::size_t>{2});
  REQUIRE(a->pair_basis(1, 0).empty());

  AlgebraElement e2 = a->basis_element(0);
  AlgebraElement beta = a->basis_element(2);
  REQUIRE(a->multiply(e2, beta) == beta);
  REQUIRE(a->multiply(beta, e2).is_zero());
  REQUIRE(a->multiply(beta, beta).is_zero());
}

TEST_CASE("two composable arrows with vanishing product") {
  AlgebraPtr b = fixtures::algebra_b();
  REQUIRE(b->dim() == 5);
  REQUIRE(b->loewy_length() == 2);
  for (std::size_t v = 0; v < 3; ++v)
    REQUIRE(b->basis()[v].arrows.empty());
  REQUIRE(b->basis()[3].arrows == std::vector<std::size_t>{0});
  REQUIRE(b->basis()[4].arrows == std::vector<std::size_t>{1});
  REQUIRE(b->pair_basis(0, 2).empty());

  AlgebraElement alpha = b->basis_element(3);
  AlgebraElement beta = b->basis_element(4);
  REQUIRE(b->multiply(alpha, beta).is_zero());
  REQUIRE(b->element_from_word(0, {0, 1}).is_zero());
  REQUIRE(b->element_from_word(0, {0}) == alpha);
  REQUIRE(b->element_from_word(2, {}) == b->basis_element(2));

  AlgebraElement x = b->add(b->basis_element(0), alpha);   // e1 + alpha
  AlgebraElement y = b->add(b->basis_element(1), beta);    // e2 + beta
  REQUIRE(b->multiply(x, y) == alpha);
}

TEST_CASE("unbound composable arrows keep the length-two path") {
  Quiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"alpha", 0, 1}, {"beta", 1, 2}};
  AlgebraPtr b = Algebra::build(q, {}, Fp(2));
  REQUIRE(b->dim() == 6);
  REQUIRE(b->loewy_length() == 3);
  REQUIRE(b->pair_basis(0, 2).size() == 1);
  AlgebraElement ab = b->element_from_word(0, {0, 1});
  REQUIRE_FALSE(ab.is_zero());
  REQUIRE(word(ab) == std::vector<std::size_t>{5});
  REQUIRE(b->basis()[5].arrows == (std::vector<std::size_t>{0, 1}));
}

TEST_CASE("loop with square zero") {
  AlgebraPtr l = fixtures::loop_sq_zero(3);
  REQUIRE(l->dim() == 2);
  REQUIRE(l->loewy_length() == 2);
  AlgebraElement x = l->basis_element(1);
  REQUIRE(l->multiply(x, x).is_zero());
}

TEST_CASE("free loop is rejected as infinite dimensional") {
  Quiver q;
  q.vertices = {"1"};
  q.arrows = {{"x", 0, 0}};
  REQUIRE_THROWS_AS(Algebra::build(q, {}, Fp(2)), InfiniteDimensionalError);
}

TEST_CASE("unbound cycle is rejected as infinite dimensional") {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
  REQUIRE_THROWS_AS(Algebra::build(q, {}, Fp(2)), InfiniteDimensionalError);
}

TEST_CASE("non-nilpotent relation is rejected") {
  // x^3 = x^5 forces x^3 (x^2 - 1) = 0; the arrow ideal never vanishes.
  Quiver q;
  q.vertices = {"1"};
  q.arrows = {{"x", 0, 0}};
  RelationSpec r;
  r.terms = {{1, {0, 0, 0}}, {1, {0, 0, 0, 0, 0}}};  // x^3 + x^5 over F_2
  REQUIRE_THROWS_AS(Algebra::build(q, {r}, Fp(2)), InfiniteDimensionalError);
}

TEST_CASE("length-one relation terms are rejected") {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  RelationSpec r;
  r.terms = {{1, {0}}};
  REQUIRE_THROWS_AS(Algebra::build(q, {r}, Fp(2)), NonAdmissibleError);
}

TEST_CASE("commuting square identifies the two diagonals") {
  AlgebraPtr s = fixtures::square(3);
  REQUIRE(s->dim() == 9);
  REQUIRE(s->loewy_length() == 3);
  REQUIRE(s->pair_basis(0, 3).size() == 1);
  AlgebraElement ab = s->element_from_word(0, {0, 1});
  AlgebraElement cd = s->element_from_word(0, {2, 3});
  REQUIRE_FALSE(ab.is_zero());
  REQUIRE(ab == cd);
}

TEST_CASE("cyclic Nakayama with radical square zero") {
  AlgebraPtr c = fixtures::cyclic_radsq(2);
  REQUIRE(c->dim() == 4);
  REQUIRE(c->loewy_length() == 2);
  AlgebraPtr c3 = fixtures::cyclic_radsq(3, 5);
  REQUIRE(c3->dim() == 6);
}

TEST_CASE("pair bases partition the path basis") {
  for (AlgebraPtr a : {fixtures::algebra_a(), fixtures::algebra_b(),
                       fixtures::square(3), fixtures::cyclic_radsq(4),
                       fixtures::linear_an(4)}) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < a->vertex_count(); ++i)
      for (std::size_t j = 0; j < a->vertex_count(); ++j) {
        for (std::size_t b : a->pair_basis(i, j)) {
          REQUIRE(a->basis()[b].source == i);
          REQUIRE(a->basis()[b].target == j);
        }
        total += a->pair_basis(i, j).size();
      }
    REQUIRE(total == a->dim());
  }
}

TEST_CASE("linear A_n path counts") {
  REQUIRE(fixtures::linear_an(1)->dim() == 1);
  REQUIRE(fixtures::linear_an(2)->dim() == 3);
  REQUIRE(fixtures::linear_an(3)->dim() == 6);
  REQUIRE(fixtures::linear_an(4)->dim() == 10);
  REQUIRE(fixtures::linear_radsq(3)->dim() == 5);
  REQUIRE(fixtures::linear_radsq(4)->dim() == 7);
}

TEST_CASE("right and left multiplication matrices") {
  AlgebraPtr a = fixtures::algebra_a();
  AlgebraElement beta = a->basis_element(2);
  // e_0 A e_0 = {e_2}, right multiplication by beta lands on the beta line.
  Matrix r = a->right_mul_matrix(beta, 0, 1, 0);
  REQUIRE(r.rows() == 1);
  REQUIRE(r.cols() == 1);
  REQUIRE(r.at(0, 0) == 1);
  // e_1 A e_1 = {e_3}: left multiplication by beta from it into e_0 A e_1.
  Matrix l = a->left_mul_matrix(beta, 0, 1, 1);
  REQUIRE(l.rows() == 1);
  REQUIRE(l.cols() == 1);
  REQUIRE(l.at(0, 0) == 1);

  AlgebraPtr b = fixtures::algebra_b();
  AlgebraElement bb = b->basis_element(4);
  Matrix rz = b->right_mul_matrix(bb, 1, 2, 0);  // alpha * beta = 0
  REQUIRE(rz.rows() == 0);
  REQUIRE(rz.cols() == 1);
  REQUIRE_THROWS_AS(b->right_mul_matrix(bb, 0, 2, 0), InvalidInputError);
}

TEST_CASE("opposite algebra reverses composition") {
  AlgebraPtr b = fixtures::algebra_b();
  AlgebraPtr op = b->opposite();
  REQUIRE(op->dim() == 5);
  REQUIRE(op->loewy_length() == 2);
  REQUIRE(op->quiver().arrows[0].source == 1);
  REQUIRE(op->quiver().arrows[0].target == 0);
  // (alpha beta)^op = beta^op alpha^op still vanishes.
  REQUIRE(op->element_from_word(2, {1, 0}).is_zero());
  // The double opposite is the original object, not a rebuild.
  REQUIRE(op->opposite().get() == b.get());

  AlgebraPtr s = fixtures::square(3);
  AlgebraPtr sop = s->opposite();
  REQUIRE(sop->dim() == 9);
  AlgebraElement ba = sop->element_from_word(3, {1, 0});
  AlgebraElement dc = sop->element_from_word(3, {3, 2});
  REQUIRE(ba == dc);
  REQUIRE_FALSE(ba.is_zero());
}

TEST_CASE("builds are deterministic") {
  AlgebraPtr b1 = fixtures::algebra_b();
  AlgebraPtr b2 = fixtures::algebra_b();
  REQUIRE(b1->dim() == b2->dim());
  for (std::size_t i = 0; i < b1->dim(); ++i) {
    REQUIRE(b1->basis()[i].source == b2->basis()[i].source);
    REQUIRE(b1->basis()[i].target == b2->basis()[i].target);
    REQUIRE(b1->basis()[i].arrows == b2->basis()[i].arrows);
  }
  for (std::size_t i = 0; i < b1->dim(); ++i)
    for (std::size_t j = 0; j < b1->dim(); ++j)
      REQUIRE(b1->multiply(b1->basis_element(i), b1->basis_element(j)).coeffs ==
              b2->multiply(b2->basis_element(i), b2->basis_element(j)).coeffs);
}
