#pragma once

#include <cstdint>

#include "tautilt/algebra.hpp"

// Small algebras reused across the suite.
namespace fixtures {

using tautilt::Algebra;
using tautilt::AlgebraPtr;
using tautilt::Fp;
using tautilt::Quiver;
using tautilt::RelationSpec;

/** Path algebra of 2 -> 3 (one arrow beta), dimension 3. */
inline AlgebraPtr algebra_a(std::uint32_t p = 2) {
  Quiver q;
  q.vertices = {"2", "3"};
  q.arrows = {{"beta", 0, 1}};
  return Algebra::build(q, {}, Fp(p));
}

/** 1 -> 2 -> 3 (alpha, beta) bound by alpha*beta = 0, dimension 5. */
inline AlgebraPtr algebra_b(std::uint32_t p = 2) {
  Quiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"alpha", 0, 1}, {"beta", 1, 2}};
  RelationSpec r;
  r.terms = {{1, {0, 1}}};
  return Algebra::build(q, {r}, Fp(p));
}

/** Linear A_n quiver 1 -> 2 -> ... -> n, no relations. */
inline AlgebraPtr linear_an(std::size_t n, std::uint32_t p = 2) {
  Quiver q;
  for (std::size_t v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
  for (std::size_t v = 0; v + 1 < n; ++v)
    q.arrows.push_back({"a" + std::to_string(v + 1), v, v + 1});
  return Algebra::build(q, {}, Fp(p));
}

/** One vertex, one loop x, bound by x^2 = 0, dimension 2. */
inline AlgebraPtr loop_sq_zero(std::uint32_t p = 2) {
  Quiver q;
  q.vertices = {"1"};
  q.arrows = {{"x", 0, 0}};
  RelationSpec r;
  r.terms = {{1, {0, 0}}};
  return Algebra::build(q, {r}, Fp(p));
}

/** Cyclic quiver on n vertices with all length-two paths zero (Nakayama). */
inline AlgebraPtr cyclic_radsq(std::size_t n, std::uint32_t p = 2) {
  Quiver q;
  for (std::size_t v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
  for (std::size_t v = 0; v < n; ++v)
    q.arrows.push_back({"a" + std::to_string(v + 1), v, (v + 1) % n});
  std::vector<RelationSpec> rels;
  for (std::size_t v = 0; v < n; ++v) {
    RelationSpec r;
    r.terms = {{1, {v, (v + 1) % n}}};
    rels.push_back(r);
  }
  return Algebra::build(q, rels, Fp(p));
}

/** Linear quiver with all length-two paths zero. */
inline AlgebraPtr linear_radsq(std::size_t n, std::uint32_t p = 2) {
  Quiver q;
  for (std::size_t v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
  for (std::size_t v = 0; v + 1 < n; ++v)
    q.arrows.push_back({"a" + std::to_string(v + 1), v, v + 1});
  std::vector<RelationSpec> rels;
  for (std::size_t v = 0; v + 2 < n; ++v) {
    RelationSpec r;
    r.terms = {{1, {v, v + 1}}};
    rels.push_back(r);
  }
  return Algebra::build(q, rels, Fp(p));
}

/** Commuting square 1 -> {2,3} -> 4 over F_p, ab = cd, dimension 9. */
inline AlgebraPtr square(std::uint32_t p = 3) {
  Quiver q;
  q.vertices = {"1", "2", "3", "4"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}};
  RelationSpec r;
  r.terms = {{1, {0, 1}}, {p - 1, {2, 3}}};
  return Algebra::build(q, {r}, Fp(p));
}

}  // namespace fixtures
