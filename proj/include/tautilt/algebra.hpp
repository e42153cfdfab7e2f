#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "tautilt/errors.hpp"
#include "tautilt/fp.hpp"
#include "tautilt/matrix.hpp"
#include "tautilt/quiver.hpp"

namespace tautilt {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

struct BuildOptions {
  std::size_t length_cap = 32;   // refuse if basis paths would reach this length
  std::size_t path_guard = 200000;  // refuse if path enumeration explodes
  std::size_t assoc_check_cap = 32;  // exhaustive associativity check bound
};

/** A normal-form path: arrow indices in traversal order (empty = trivial
    path at source == target). */
struct BasisPath {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;
  std::size_t length() const { return arrows.size(); }
};

/** Coefficient vector over an algebra's path basis. */
struct AlgebraElement {
  AlgebraPtr alg;
  std::vector<std::uint32_t> coeffs;

  bool is_zero() const {
    for (auto c : coeffs)
      if (c) return false;
    return true;
  }
  bool operator==(const AlgebraElement& o) const { return coeffs == o.coeffs; }
};

namespace detail {

struct PathNode {
  std::int32_t parent = -1;  // path with the last arrow removed
  std::int32_t arrow = -1;   // last arrow
  std::uint32_t source = 0, target = 0, length = 0;
};

/** Computes the path normal forms of a bound quiver algebra by eliminating
    the relation ideal level by level.  Terms are ordered by path id, and ids
    follow (length, generation order), so leading terms are the longest,
    lexicographically latest paths and normal forms are minimal. */
struct AlgebraBuilder {
  using Vec = std::map<std::uint32_t, std::uint32_t>;
  struct Row {
    Vec v;
    std::size_t maxlen = 0;
    std::size_t src = 0, tgt = 0;
  };

  const Quiver& q;
  Fp field;
  BuildOptions opt;
  std::vector<PathNode> nodes;
  std::vector<std::vector<std::int32_t>> children;  // node -> arrow -> node
  std::vector<std::vector<std::uint32_t>> levels;
  std::size_t generated_to = 0;
  std::map<std::uint32_t, Row> echelon;  // leading path id -> row

  AlgebraBuilder(const Quiver& quiver, Fp f, BuildOptions o)
      : q(quiver), field(f), opt(o) {
    levels.resize(1);
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      PathNode n;
      n.source = n.target = static_cast<std::uint32_t>(v);
      nodes.push_back(n);
      children.emplace_back(q.arrows.size(), -1);
      levels[0].push_back(static_cast<std::uint32_t>(v));
    }
  }

  void ensure_length(std::size_t want) {
    while (generated_to < want) {
      std::size_t prev = generated_to;
      levels.resize(prev + 2);
      if (prev == 0) {
        // Arrows keep their declared order, giving them the basis indices
        // right after the trivial paths.
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
          extend(static_cast<std::uint32_t>(q.arrows[a].source), a, prev);
      } else {
        for (std::uint32_t pid : levels[prev])
          for (std::size_t a = 0; a < q.arrows.size(); ++a)
            if (q.arrows[a].source == nodes[pid].target) extend(pid, a, prev);
      }
      ++generated_to;
    }
  }

  void extend(std::uint32_t pid, std::size_t a, std::size_t prev) {
    PathNode n;
    n.parent = static_cast<std::int32_t>(pid);
    n.arrow = static_cast<std::int32_t>(a);
    n.source = nodes[pid].source;
    n.target = static_cast<std::uint32_t>(q.arrows[a].target);
    n.length = nodes[pid].length + 1;
    std::uint32_t nid = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(n);
    children.emplace_back(q.arrows.size(), -1);
    children[pid][a] = static_cast<std::int32_t>(nid);
    levels[prev + 1].push_back(nid);
    if (nodes.size() > opt.path_guard)
      throw InfiniteDimensionalError(
          "path enumeration exceeded the guard; the arrow ideal does not "
          "become nilpotent at desk scale");
  }

  std::vector<std::size_t> path_arrows(std::uint32_t pid) const {
    std::vector<std::size_t> w;
    for (std::int32_t cur = static_cast<std::int32_t>(pid);
         nodes[cur].arrow >= 0; cur = nodes[cur].parent)
      w.push_back(static_cast<std::size_t>(nodes[cur].arrow));
    std::reverse(w.begin(), w.end());
    return w;
  }

  /** Node of the concatenation (pid, then the given arrows). */
  std::uint32_t walk(std::uint32_t pid, const std::vector<std::size_t>& w) {
    std::uint32_t cur = pid;
    for (std::size_t a : w) {
      if (q.arrows[a].source != nodes[cur].target)
        throw Error("internal: non-composable walk");
      ensure_length(nodes[cur].length + 1);
      std::int32_t nxt = children[cur][a];
      if (nxt < 0) throw Error("internal: missing path node");
      cur = static_cast<std::uint32_t>(nxt);
    }
    return cur;
  }

  std::uint32_t path_of_word(std::size_t source,
                             const std::vector<std::size_t>& w) {
    return walk(static_cast<std::uint32_t>(source), w);
  }

  void axpy(Vec& v, std::uint32_t c, const Vec& r) const {
    for (const auto& [k, rc] : r) {
      auto it = v.find(k);
      std::uint32_t nv = field.add(it == v.end() ? 0 : it->second,
                                   field.mul(c, rc));
      if (nv == 0) {
        if (it != v.end()) v.erase(it);
      } else if (it == v.end()) {
        v.emplace(k, nv);
      } else {
        it->second = nv;
      }
    }
  }

  void reduce(Vec& v) const {
    while (true) {
      const Row* hit = nullptr;
      std::uint32_t coeff = 0;
      for (auto it = v.rbegin(); it != v.rend(); ++it) {
        auto e = echelon.find(it->first);
        if (e != echelon.end()) {
          hit = &e->second;
          coeff = it->second;
          break;
        }
      }
      if (!hit) return;
      axpy(v, field.neg(coeff), hit->v);
    }
  }

  bool insert(Vec v, std::size_t src, std::size_t tgt) {
    reduce(v);
    if (v.empty()) return false;
    std::uint32_t lead = v.rbegin()->first;
    std::uint32_t s = field.inv(v.rbegin()->second);
    Row row;
    for (auto& [k, c] : v) row.v.emplace(k, field.mul(c, s));
    row.src = src;
    row.tgt = tgt;
    for (auto& [k, c] : row.v)
      row.maxlen = std::max(row.maxlen, static_cast<std::size_t>(nodes[k].length));
    echelon[lead] = std::move(row);
    return true;
  }

  void seed_relations(const std::vector<RelationSpec>& rels) {
    for (const auto& rel : rels) {
      rel.validate(q, field);
      Vec v;
      std::size_t src = q.arrows[rel.terms.front().arrows.front()].source;
      std::size_t tgt = q.arrows[rel.terms.front().arrows.back()].target;
      for (const auto& t : rel.terms) {
        std::size_t s = q.arrows[t.arrows.front()].source;
        std::uint32_t pid = path_of_word(s, t.arrows);
        Vec one{{pid, t.coeff}};
        axpy(v, 1, one);
      }
      insert(std::move(v), src, tgt);
    }
  }

  /** Multiplies echelon rows by single arrows on both sides until stable,
      considering only products whose terms stay within length `gate`. */
  void close_up_to(std::size_t gate) {
    std::set<std::pair<std::uint32_t, std::size_t>> done_left, done_right;
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::uint32_t> keys;
      for (const auto& [k, row] : echelon)
        if (row.maxlen + 1 <= gate) keys.push_back(k);
      for (std::uint32_t key : keys) {
        auto it = echelon.find(key);
        if (it == echelon.end()) continue;
        const Row row = it->second;  // copy: echelon mutates below
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
          if (q.arrows[a].target == row.src &&
              !done_left.count({key, a})) {
            done_left.insert({key, a});
            Vec nv;
            for (const auto& [pid, c] : row.v) {
              std::uint32_t arrow_node =
                  walk(static_cast<std::uint32_t>(q.arrows[a].source), {a});
              std::uint32_t npid = walk(arrow_node, path_arrows(pid));
              axpy(nv, 1, Vec{{npid, c}});
            }
            if (insert(std::move(nv), q.arrows[a].source, row.tgt))
              changed = true;
          }
          if (q.arrows[a].source == row.tgt &&
              !done_right.count({key, a})) {
            done_right.insert({key, a});
            Vec nv;
            for (const auto& [pid, c] : row.v) {
              std::uint32_t npid = walk(pid, {a});
              axpy(nv, 1, Vec{{npid, c}});
            }
            if (insert(std::move(nv), row.src, q.arrows[a].target))
              changed = true;
          }
        }
      }
    }
  }

  bool level_in_ideal(std::size_t l) {
    ensure_length(l);
    for (std::uint32_t pid : levels[l]) {
      Vec v{{pid, 1}};
      reduce(v);
      if (!v.empty()) return false;
    }
    return true;
  }
};

}  // namespace detail

/** Bound quiver algebra kA/I over F_p with a fixed path normal-form basis
    and a precomputed multiplication table.  Immutable after build; paths and
    words compose in reading order ("ab" means a, then b). */
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static AlgebraPtr build(const Quiver& quiver,
                          const std::vector<RelationSpec>& relations,
                          Fp field = Fp(2), BuildOptions opt = {}) {
    AlgebraPtr a = build_impl(quiver, relations, field, opt, true);
    return a;
  }

  const Quiver& quiver() const { return quiver_; }
  const Fp& field() const { return field_; }
  const std::vector<RelationSpec>& relations() const { return relations_; }
  const BuildOptions& options() const { return opt_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t vertex_count() const { return quiver_.vertices.size(); }
  std::size_t arrow_count() const { return quiver_.arrows.size(); }
  /** Least l with (arrow ideal)^l = 0. */
  std::size_t loewy_length() const { return loewy_; }

  const std::vector<BasisPath>& basis() const { return basis_; }
  std::size_t trivial_basis(std::size_t v) const { return v; }
  std::size_t arrow_basis(std::size_t a) const {
    return quiver_.vertices.size() + a;
  }

  /** Basis indices of paths with the given source and target, the span of
      e_source A e_target read along paths. */
  const std::vector<std::size_t>& pair_basis(std::size_t source,
                                             std::size_t target) const {
    return pair_[source * vertex_count() + target];
  }

  AlgebraElement zero_element() const {
    return {shared_from_this(), std::vector<std::uint32_t>(dim(), 0)};
  }
  AlgebraElement basis_element(std::size_t b) const {
    AlgebraElement e = zero_element();
    e.coeffs[b] = 1;
    return e;
  }
  AlgebraElement identity_element() const {
    AlgebraElement e = zero_element();
    for (std::size_t v = 0; v < vertex_count(); ++v)
      e.coeffs[trivial_basis(v)] = 1;
    return e;
  }

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement r = a;
    for (std::size_t i = 0; i < dim(); ++i)
      r.coeffs[i] = field_.add(r.coeffs[i], b.coeffs[i]);
    return r;
  }
  AlgebraElement scale(std::uint32_t c, const AlgebraElement& a) const {
    AlgebraElement r = a;
    for (auto& x : r.coeffs) x = field_.mul(c, x);
    return r;
  }

  AlgebraElement multiply(const AlgebraElement& a,
                          const AlgebraElement& b) const {
    AlgebraElement r = zero_element();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!a.coeffs[i]) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (!b.coeffs[j]) continue;
        const auto& row = table_[i * dim() + j];
        if (row.empty()) continue;
        std::uint32_t c = field_.mul(a.coeffs[i], b.coeffs[j]);
        for (std::size_t k = 0; k < dim(); ++k)
          if (row[k])
            r.coeffs[k] = field_.add(r.coeffs[k], field_.mul(c, row[k]));
      }
    }
    return r;
  }

  /** Normal form of an arrow word starting at `source` (the trivial path
      when the word is empty). */
  AlgebraElement element_from_word(std::size_t source,
                                   const std::vector<std::size_t>& word) const {
    AlgebraElement e = basis_element(trivial_basis(source));
    for (std::size_t a : word)
      e = multiply(e, basis_element(arrow_basis(a)));
    return e;
  }

  bool supported_in(const AlgebraElement& e, std::size_t source,
                    std::size_t target) const {
    for (std::size_t b = 0; b < dim(); ++b)
      if (e.coeffs[b] &&
          (basis_[b].source != source || basis_[b].target != target))
        return false;
    return true;
  }

  /** Matrix of right multiplication by q in e_i A e_src(q) -> e_i A e_tgt(q),
      columns and rows indexed by the respective pair bases. */
  Matrix right_mul_matrix(const AlgebraElement& elem, std::size_t src,
                          std::size_t tgt, std::size_t i) const {
    require_support(elem, src, tgt);
    const auto& cols = pair_basis(i, src);
    const auto& rows = pair_basis(i, tgt);
    Matrix m(field_, rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      AlgebraElement prod = multiply(basis_element(cols[c]), elem);
      for (std::size_t r = 0; r < rows.size(); ++r)
        m.at(r, c) = prod.coeffs[rows[r]];
    }
    return m;
  }

  /** Matrix of left multiplication by q in e_tgt(q) A e_j -> e_src(q) A e_j. */
  Matrix left_mul_matrix(const AlgebraElement& elem, std::size_t src,
                         std::size_t tgt, std::size_t j) const {
    require_support(elem, src, tgt);
    const auto& cols = pair_basis(tgt, j);
    const auto& rows = pair_basis(src, j);
    Matrix m(field_, rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      AlgebraElement prod = multiply(elem, basis_element(cols[c]));
      for (std::size_t r = 0; r < rows.size(); ++r)
        m.at(r, c) = prod.coeffs[rows[r]];
    }
    return m;
  }

  /** The opposite algebra (arrows and relation words reversed). */
  AlgebraPtr opposite() const {
    if (op_) return op_;
    if (auto locked = op_back_.lock()) return locked;
    std::vector<RelationSpec> rel;
    for (const auto& r : relations_) rel.push_back(r.reversed());
    return build_impl(quiver_.opposite(), rel, field_, opt_, true);
  }

 private:
  static AlgebraPtr build_impl(const Quiver& quiver,
                               const std::vector<RelationSpec>& relations,
                               Fp field, BuildOptions opt, bool with_op) {
    quiver.validate();
    auto alg = std::make_shared<Algebra>();
    alg->quiver_ = quiver;
    alg->field_ = field;
    alg->relations_ = relations;
    alg->opt_ = opt;

    detail::AlgebraBuilder b(alg->quiver_, field, opt);
    b.seed_relations(relations);
    std::size_t lstar = 0;
    for (std::size_t l = 1; l <= opt.length_cap; ++l) {
      b.ensure_length(l);
      b.close_up_to(l);
      if (b.level_in_ideal(l)) {
        lstar = l;
        break;
      }
    }
    if (lstar == 0)
      throw InfiniteDimensionalError(
          "independent paths persist at the length cap (" +
          std::to_string(opt.length_cap) + "); not finite dimensional");
    alg->loewy_ = lstar;

    // Normal-form basis: non-pivot paths of length < lstar, in id order.
    std::vector<std::int32_t> basis_of_path(b.nodes.size(), -1);
    for (std::size_t l = 0; l < lstar; ++l) {
      for (std::uint32_t pid : b.levels[l]) {
        if (b.echelon.count(pid)) continue;
        BasisPath bp;
        bp.source = b.nodes[pid].source;
        bp.target = b.nodes[pid].target;
        bp.arrows = b.path_arrows(pid);
        basis_of_path[pid] = static_cast<std::int32_t>(alg->basis_.size());
        alg->basis_.push_back(std::move(bp));
      }
    }
    const std::size_t dim = alg->basis_.size();
    const std::size_t nv = quiver.vertices.size();
    for (std::size_t v = 0; v < nv; ++v)
      if (basis_of_path[v] != static_cast<std::int32_t>(v))
        throw Error("internal: trivial path eliminated from basis");
    for (std::size_t a = 0; a < quiver.arrows.size(); ++a) {
      std::uint32_t anode = b.walk(
          static_cast<std::uint32_t>(quiver.arrows[a].source), {a});
      if (basis_of_path[anode] != static_cast<std::int32_t>(nv + a))
        throw Error("internal: arrow eliminated from basis");
    }

    alg->pair_.assign(nv * nv, {});
    for (std::size_t i = 0; i < dim; ++i)
      alg->pair_[alg->basis_[i].source * nv + alg->basis_[i].target]
          .push_back(i);

    // Multiplication table on basis paths.
    alg->table_.assign(dim * dim, {});
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const BasisPath& p = alg->basis_[i];
        const BasisPath& q = alg->basis_[j];
        if (p.target != q.source) continue;
        if (p.length() + q.length() >= lstar) continue;  // lies in rad^lstar = 0
        std::uint32_t node = b.walk(
            static_cast<std::uint32_t>(p.source), p.arrows);
        node = b.walk(node, q.arrows);
        detail::AlgebraBuilder::Vec v{{node, 1}};
        b.reduce(v);
        if (v.empty()) continue;
        std::vector<std::uint32_t> row(dim, 0);
        for (const auto& [pid, c] : v) {
          if (basis_of_path[pid] < 0)
            throw Error("internal: reduction left a non-basis path");
          row[basis_of_path[pid]] = c;
        }
        alg->table_[i * dim + j] = std::move(row);
      }
    }

    alg->validate_structure();

    if (with_op) {
      std::vector<RelationSpec> rel;
      for (const auto& r : relations) rel.push_back(r.reversed());
      AlgebraPtr op = build_impl(quiver.opposite(), rel, field, opt, false);
      alg->op_ = op;
      const_cast<Algebra*>(op.get())->op_back_ = alg;
    }
    return alg;
  }

  void require_support(const AlgebraElement& e, std::size_t src,
                       std::size_t tgt) const {
    if (!supported_in(e, src, tgt))
      throw InvalidInputError("element not supported in the stated e_i A e_j");
  }

  void validate_structure() const {
    const std::size_t n = vertex_count();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        AlgebraElement prod =
            multiply(basis_element(trivial_basis(i)), basis_element(trivial_basis(j)));
        AlgebraElement want = i == j ? basis_element(trivial_basis(i)) : zero_element();
        if (!(prod == want))
          throw Error("internal: trivial paths are not orthogonal idempotents");
      }
    AlgebraElement one = identity_element();
    for (std::size_t bidx = 0; bidx < dim(); ++bidx) {
      AlgebraElement e = basis_element(bidx);
      if (!(multiply(one, e) == e) || !(multiply(e, one) == e))
        throw Error("internal: identity does not act as identity");
    }
    for (const auto& rel : relations_) {
      AlgebraElement sum = zero_element();
      for (const auto& t : rel.terms) {
        std::size_t s = quiver_.arrows[t.arrows.front()].source;
        sum = add(sum, scale(t.coeff, element_from_word(s, t.arrows)));
      }
      if (!sum.is_zero())
        throw Error("internal: a defining relation is nonzero in the quotient");
    }
    if (dim() <= opt_.assoc_check_cap) {
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
          AlgebraElement ij = multiply(basis_element(i), basis_element(j));
          for (std::size_t k = 0; k < dim(); ++k) {
            AlgebraElement jk = multiply(basis_element(j), basis_element(k));
            if (!(multiply(ij, basis_element(k)) ==
                  multiply(basis_element(i), jk)))
              throw Error("internal: multiplication table is not associative");
          }
        }
    }
  }

  Quiver quiver_;
  Fp field_;
  std::vector<RelationSpec> relations_;
  BuildOptions opt_;
  std::vector<BasisPath> basis_;
  std::size_t loewy_ = 1;
  std::vector<std::vector<std::size_t>> pair_;
  std::vector<std::vector<std::uint32_t>> table_;
  AlgebraPtr op_;
  std::weak_ptr<const Algebra> op_back_;

 public:
  Algebra() = default;  // use build(); public only for make_shared
};

}  // namespace tautilt
