#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tautilt/algebra.hpp"
#include "tautilt/errors.hpp"
#include "tautilt/matrix.hpp"

namespace tautilt {

/** Module over a bound quiver algebra as a covariant quiver representation:
    a space per vertex and, per arrow a: s -> t, a matrix of shape
    dims[t] x dims[s] acting on column vectors.  The word "a then b" acts as
    M_b * M_a. */
struct Representation {
  AlgebraPtr alg;
  std::vector<std::size_t> dims;
  std::vector<Matrix> arrows;
};

inline Representation zero_rep(const AlgebraPtr& alg) {
  Representation r;
  r.alg = alg;
  r.dims.assign(alg->vertex_count(), 0);
  for (std::size_t a = 0; a < alg->arrow_count(); ++a)
    r.arrows.push_back(Matrix(alg->field(), 0, 0));
  return r;
}

inline std::size_t total_dim(const Representation& r) {
  std::size_t t = 0;
  for (auto d : r.dims) t += d;
  return t;
}

inline bool is_zero_rep(const Representation& r) { return total_dim(r) == 0; }

/** Matrix of the action of an arrow word read left to right, from the space
    at `source` to the word's end vertex. */
inline Matrix word_matrix(const Representation& r, std::size_t source,
                          const std::vector<std::size_t>& word) {
  Matrix m = Matrix::identity(r.alg->field(), r.dims[source]);
  for (std::size_t a : word) m = r.arrows[a] * m;
  return m;
}

/** Action matrix of an element supported in e_i A e_j, from the space at i
    to the space at j. */
inline Matrix element_action(const Representation& r, const AlgebraElement& q,
                             std::size_t i, std::size_t j) {
  if (!r.alg->supported_in(q, i, j))
    throw InvalidInputError("element not supported in the stated e_i A e_j");
  Matrix m(r.alg->field(), r.dims[j], r.dims[i]);
  for (std::size_t b = 0; b < q.coeffs.size(); ++b)
    if (q.coeffs[b])
      m = m + word_matrix(r, i, r.alg->basis()[b].arrows).scaled(q.coeffs[b]);
  return m;
}

/** Throws unless shapes match dims and every defining relation acts by zero. */
inline void validate_rep(const Representation& r) {
  const Quiver& q = r.alg->quiver();
  if (r.dims.size() != q.vertices.size() || r.arrows.size() != q.arrows.size())
    throw InvalidInputError("representation has wrong vertex or arrow count");
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    if (r.arrows[a].rows() != r.dims[q.arrows[a].target] ||
        r.arrows[a].cols() != r.dims[q.arrows[a].source])
      throw InvalidInputError("arrow matrix shape does not match dims");
  for (const auto& rel : r.alg->relations()) {
    std::size_t src = q.arrows[rel.terms.front().arrows.front()].source;
    std::size_t tgt = q.arrows[rel.terms.front().arrows.back()].target;
    Matrix sum(r.alg->field(), r.dims[tgt], r.dims[src]);
    for (const auto& t : rel.terms)
      sum = sum + word_matrix(r, src, t.arrows).scaled(t.coeff);
    if (!sum.is_zero())
      throw InvalidInputError("a defining relation acts nonzero");
  }
}

/** Morphism of representations: one block per vertex, intertwining all
    arrow actions. */
struct ModuleMap {
  Representation source;
  Representation target;
  std::vector<Matrix> comps;  // per vertex: target.dims[v] x source.dims[v]
};

inline void require_same_algebra(const Representation& a,
                                 const Representation& b) {
  if (a.alg.get() != b.alg.get())
    throw InvalidInputError("modules live over different algebras");
}

inline ModuleMap zero_map(const Representation& m, const Representation& n) {
  require_same_algebra(m, n);
  ModuleMap f{m, n, {}};
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    f.comps.push_back(Matrix(m.alg->field(), n.dims[v], m.dims[v]));
  return f;
}

inline ModuleMap identity_map(const Representation& m) {
  ModuleMap f{m, m, {}};
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    f.comps.push_back(Matrix::identity(m.alg->field(), m.dims[v]));
  return f;
}

inline bool is_zero_map(const ModuleMap& f) {
  for (const auto& c : f.comps)
    if (!c.is_zero()) return false;
  return true;
}

/** g after f. */
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.comps.size(); ++v)
    h.comps.push_back(g.comps[v] * f.comps[v]);
  return h;
}

inline ModuleMap add_maps(const ModuleMap& f, const ModuleMap& g) {
  ModuleMap h = f;
  for (std::size_t v = 0; v < h.comps.size(); ++v)
    h.comps[v] = h.comps[v] + g.comps[v];
  return h;
}

inline ModuleMap scale_map(std::uint32_t c, const ModuleMap& f) {
  ModuleMap h = f;
  for (auto& m : h.comps) m = m.scaled(c);
  return h;
}

inline void check_intertwiner(const ModuleMap& f) {
  const Quiver& q = f.source.alg->quiver();
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    if (f.comps[t] * f.source.arrows[a] != f.target.arrows[a] * f.comps[s])
      throw Error("internal: map is not an intertwiner");
  }
}

enum class StdKind { Simple, Projective, Injective };

/** S_v, P_v = e_v A on path coordinates, or I_v = (A e_v)^* dually. */
inline Representation standard_module(const AlgebraPtr& alg, StdKind kind,
                                      std::size_t v) {
  if (v >= alg->vertex_count()) throw InvalidInputError("vertex out of range");
  const Quiver& q = alg->quiver();
  Representation r;
  r.alg = alg;
  r.dims.assign(alg->vertex_count(), 0);
  switch (kind) {
    case StdKind::Simple: {
      r.dims[v] = 1;
      for (std::size_t a = 0; a < q.arrows.size(); ++a)
        r.arrows.push_back(Matrix(alg->field(),
                                  r.dims[q.arrows[a].target],
                                  r.dims[q.arrows[a].source]));
      break;
    }
    case StdKind::Projective: {
      for (std::size_t w = 0; w < alg->vertex_count(); ++w)
        r.dims[w] = alg->pair_basis(v, w).size();
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        AlgebraElement e = alg->basis_element(alg->arrow_basis(a));
        r.arrows.push_back(alg->right_mul_matrix(e, q.arrows[a].source,
                                                 q.arrows[a].target, v));
      }
      break;
    }
    case StdKind::Injective: {
      for (std::size_t w = 0; w < alg->vertex_count(); ++w)
        r.dims[w] = alg->pair_basis(w, v).size();
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        AlgebraElement e = alg->basis_element(alg->arrow_basis(a));
        r.arrows.push_back(alg->left_mul_matrix(e, q.arrows[a].source,
                                                q.arrows[a].target, v)
                               .transpose());
      }
      break;
    }
  }
  validate_rep(r);
  return r;
}

/** Block-diagonal sum; the empty list gives the zero module. */
inline Representation direct_sum(const AlgebraPtr& alg,
                                 const std::vector<Representation>& parts) {
  Representation r = zero_rep(alg);
  for (const auto& p : parts) {
    require_same_algebra(r, p);
    for (std::size_t v = 0; v < r.dims.size(); ++v) r.dims[v] += p.dims[v];
  }
  const Quiver& q = alg->quiver();
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    Matrix m(alg->field(), r.dims[q.arrows[a].target],
             r.dims[q.arrows[a].source]);
    std::size_t ro = 0, co = 0;
    for (const auto& p : parts) {
      m.set_block(ro, co, p.arrows[a]);
      ro += p.dims[q.arrows[a].target];
      co += p.dims[q.arrows[a].source];
    }
    r.arrows[a] = m;
  }
  return r;
}

inline std::vector<ModuleMap> sum_injections(
    const AlgebraPtr& alg, const std::vector<Representation>& parts,
    const Representation& sum) {
  std::vector<ModuleMap> inj;
  std::vector<std::size_t> off(alg->vertex_count(), 0);
  for (const auto& p : parts) {
    ModuleMap f = zero_map(p, sum);
    for (std::size_t v = 0; v < p.dims.size(); ++v)
      for (std::size_t i = 0; i < p.dims[v]; ++i)
        f.comps[v].at(off[v] + i, i) = 1;
    inj.push_back(std::move(f));
    for (std::size_t v = 0; v < p.dims.size(); ++v) off[v] += p.dims[v];
  }
  return inj;
}

inline std::vector<ModuleMap> sum_projections(
    const AlgebraPtr& alg, const std::vector<Representation>& parts,
    const Representation& sum) {
  std::vector<ModuleMap> prj;
  std::vector<std::size_t> off(alg->vertex_count(), 0);
  for (const auto& p : parts) {
    ModuleMap f = zero_map(sum, p);
    for (std::size_t v = 0; v < p.dims.size(); ++v)
      for (std::size_t i = 0; i < p.dims[v]; ++i)
        f.comps[v].at(i, off[v] + i) = 1;
    prj.push_back(std::move(f));
    for (std::size_t v = 0; v < p.dims.size(); ++v) off[v] += p.dims[v];
  }
  return prj;
}

/** Basis of Hom(M, N): kernel of the stacked intertwiner equations.
    Unknowns are the entries of the vertex blocks, vertex-major, row-major;
    the basis follows the ascending free columns of the echelon form, so the
    result is deterministic. */
inline std::vector<ModuleMap> hom_basis(const Representation& m,
                                        const Representation& n) {
  require_same_algebra(m, n);
  const Fp field = m.alg->field();
  const Quiver& q = m.alg->quiver();
  const std::size_t nv = m.dims.size();
  std::vector<std::size_t> off(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v)
    off[v + 1] = off[v] + n.dims[v] * m.dims[v];
  const std::size_t unknowns = off[nv];
  std::size_t eqs = 0;
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    eqs += n.dims[q.arrows[a].target] * m.dims[q.arrows[a].source];
  Matrix sys(field, eqs, unknowns);
  std::size_t row = 0;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    // f_t * M_a - N_a * f_s = 0, entry (i, j).
    for (std::size_t i = 0; i < n.dims[t]; ++i)
      for (std::size_t j = 0; j < m.dims[s]; ++j) {
        for (std::size_t k = 0; k < m.dims[t]; ++k)
          sys.at(row, off[t] + i * m.dims[t] + k) = field.add(
              sys.at(row, off[t] + i * m.dims[t] + k), m.arrows[a].at(k, j));
        for (std::size_t k = 0; k < n.dims[s]; ++k)
          sys.at(row, off[s] + k * m.dims[s] + j) =
              field.sub(sys.at(row, off[s] + k * m.dims[s] + j),
                        n.arrows[a].at(i, k));
        ++row;
      }
  }
  Matrix ker = sys.kernel_basis();
  std::vector<ModuleMap> basis;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    ModuleMap f = zero_map(m, n);
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t i = 0; i < n.dims[v]; ++i)
        for (std::size_t j = 0; j < m.dims[v]; ++j)
          f.comps[v].at(i, j) = ker.at(off[v] + i * m.dims[v] + j, c);
    basis.push_back(std::move(f));
  }
  return basis;
}

inline std::size_t hom_dim(const Representation& m, const Representation& n) {
  return hom_basis(m, n).size();
}

/** Subrepresentation spanned by given independent columns at each vertex;
    throws if the spaces are not closed under the arrow action. */
inline Representation sub_rep(const Representation& n,
                              const std::vector<Matrix>& bases,
                              ModuleMap* inclusion = nullptr) {
  const Quiver& q = n.alg->quiver();
  Representation r;
  r.alg = n.alg;
  for (std::size_t v = 0; v < n.dims.size(); ++v)
    r.dims.push_back(bases[v].cols());
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    std::optional<Matrix> x = bases[t].solve_right(n.arrows[a] * bases[s]);
    if (!x) throw Error("internal: spaces not arrow-closed in sub_rep");
    r.arrows.push_back(*x);
  }
  if (inclusion) {
    inclusion->source = r;
    inclusion->target = n;
    inclusion->comps = bases;
  }
  return r;
}

/** Quotient by an arrow-closed family of column spans. */
inline Representation quot_rep(const Representation& n,
                               const std::vector<Matrix>& bases,
                               ModuleMap* projection = nullptr) {
  const Quiver& q = n.alg->quiver();
  std::vector<QuotientMap> qm;
  for (std::size_t v = 0; v < n.dims.size(); ++v)
    qm.push_back(quotient_map(bases[v]));
  Representation r;
  r.alg = n.alg;
  for (std::size_t v = 0; v < n.dims.size(); ++v)
    r.dims.push_back(qm[v].proj.rows());
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
    r.arrows.push_back(qm[t].proj * n.arrows[a] * qm[s].section);
  }
  if (projection) {
    projection->source = n;
    projection->target = r;
    projection->comps.clear();
    for (std::size_t v = 0; v < n.dims.size(); ++v)
      projection->comps.push_back(qm[v].proj);
  }
  return r;
}

struct MapParts {
  Representation kernel;
  ModuleMap kernel_inclusion;
  Representation image;
  ModuleMap image_inclusion;
  Representation cokernel;
  ModuleMap cokernel_projection;
};

/** Vertexwise kernel, image, and cokernel with their induced actions. */
inline MapParts map_parts(const ModuleMap& f) {
  MapParts p;
  std::vector<Matrix> kb, ib;
  for (std::size_t v = 0; v < f.comps.size(); ++v) {
    kb.push_back(f.comps[v].kernel_basis());
    ib.push_back(column_space(f.comps[v]));
  }
  p.kernel = sub_rep(f.source, kb, &p.kernel_inclusion);
  p.image = sub_rep(f.target, ib, &p.image_inclusion);
  p.cokernel = quot_rep(f.target, ib, &p.cokernel_projection);
  return p;
}

/** Per-vertex radical spaces: sums of the images of arrows into each vertex. */
inline std::vector<Matrix> radical_subspaces(const Representation& m) {
  const Quiver& q = m.alg->quiver();
  std::vector<Matrix> rad;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Matrix acc(m.alg->field(), m.dims[v], 0);
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].target == v) acc = hstack(acc, m.arrows[a]);
    rad.push_back(column_space(acc));
  }
  return rad;
}

/** Per-vertex socle spaces: joint kernels of the arrows out of each vertex. */
inline std::vector<Matrix> socle_subspaces(const Representation& m) {
  const Quiver& q = m.alg->quiver();
  std::vector<Matrix> soc;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    Matrix acc(m.alg->field(), 0, m.dims[v]);
    for (std::size_t a = 0; a < q.arrows.size(); ++a)
      if (q.arrows[a].source == v) acc = vstack(acc, m.arrows[a]);
    soc.push_back(column_space(acc.kernel_basis()));
  }
  return soc;
}

struct Layers {
  Representation top;
  Representation radical;
  Representation socle;
};

inline Layers layers(const Representation& m) {
  Layers l;
  std::vector<Matrix> rad = radical_subspaces(m);
  l.radical = sub_rep(m, rad);
  l.top = quot_rep(m, rad);
  l.socle = sub_rep(m, socle_subspaces(m));
  return l;
}

/** Dimension vectors of the radical filtration quotients, top first. */
inline std::vector<std::vector<std::size_t>> loewy_layers(
    const Representation& m) {
  std::vector<std::vector<std::size_t>> out;
  Representation cur = m;
  while (total_dim(cur) > 0) {
    std::vector<Matrix> rad = radical_subspaces(cur);
    std::vector<std::size_t> layer;
    for (std::size_t v = 0; v < cur.dims.size(); ++v)
      layer.push_back(cur.dims[v] - rad[v].cols());
    out.push_back(std::move(layer));
    cur = sub_rep(cur, rad);
  }
  return out;
}

struct SubRep {
  std::vector<Matrix> bases;
  Representation rep;
};

/** Largest subrepresentation of N generated by M: the sum of the images of
    all homomorphisms M -> N. */
inline SubRep trace(const Representation& m, const Representation& n) {
  std::vector<ModuleMap> homs = hom_basis(m, n);
  SubRep t;
  for (std::size_t v = 0; v < n.dims.size(); ++v) {
    Matrix acc(n.alg->field(), n.dims[v], 0);
    for (const auto& f : homs) acc = hstack(acc, f.comps[v]);
    t.bases.push_back(column_space(acc));
  }
  t.rep = sub_rep(n, t.bases);
  return t;
}

/** N lies in Fac M: is N generated by M, i.e. trace(M, N) = N? */
inline bool in_fac(const Representation& m, const Representation& n) {
  SubRep t = trace(m, n);
  for (std::size_t v = 0; v < n.dims.size(); ++v)
    if (t.bases[v].cols() != n.dims[v]) return false;
  return true;
}

namespace detail {

inline bool blocks_invertible(const std::vector<Matrix>& comps) {
  for (const auto& c : comps) {
    if (c.rows() != c.cols()) return false;
    if (c.rank() != c.rows()) return false;
  }
  return true;
}

inline std::vector<Matrix> combine(const std::vector<ModuleMap>& basis,
                                   const std::vector<std::uint32_t>& coef,
                                   const Representation& m,
                                   const Representation& n) {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    comps.push_back(Matrix(m.alg->field(), n.dims[v], m.dims[v]));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!coef[i]) continue;
    for (std::size_t v = 0; v < comps.size(); ++v)
      comps[v] = comps[v] + basis[i].comps[v].scaled(coef[i]);
  }
  return comps;
}

/** Odometer over coefficient tuples in [0,p)^h, least index fastest. */
inline bool next_tuple(std::vector<std::uint32_t>& c, std::uint32_t p) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

}  // namespace detail

/** True iff some Hom element is invertible at every vertex.  Enumerates the
    whole Hom space when its dimension is at most `exact_cap`; above that,
    tries a fixed budget of deterministic pseudo-random combinations and
    throws when nothing conclusive is found. */
inline bool are_isomorphic(const Representation& m, const Representation& n,
                           std::size_t exact_cap = 20) {
  require_same_algebra(m, n);
  if (m.dims != n.dims) return false;
  if (total_dim(m) == 0) return true;
  std::vector<ModuleMap> basis = hom_basis(m, n);
  if (basis.empty()) return false;
  const std::uint32_t p = m.alg->field().p;
  for (const auto& f : basis)
    if (detail::blocks_invertible(f.comps)) return true;
  if (basis.size() <= exact_cap) {
    std::vector<std::uint32_t> coef(basis.size(), 0);
    while (detail::next_tuple(coef, p))
      if (detail::blocks_invertible(detail::combine(basis, coef, m, n)))
        return true;
    return false;
  }
  DetRng rng(0x7461752d69736fULL);
  for (std::size_t trial = 0; trial < 4096; ++trial) {
    std::vector<std::uint32_t> coef;
    for (std::size_t i = 0; i < basis.size(); ++i) coef.push_back(rng.below(p));
    if (detail::blocks_invertible(detail::combine(basis, coef, m, n)))
      return true;
  }
  throw UndecidedError(
      "isomorphism undecided: Hom dimension exceeds the enumeration cap and "
      "the pseudo-random search found no isomorphism");
}

namespace detail {

inline ModuleMap endo_power(const ModuleMap& f, std::size_t d) {
  ModuleMap g = f;
  for (auto& c : g.comps) c = c.pow(d);
  return g;
}

inline bool is_nilpotent_endo(const ModuleMap& f, std::size_t d) {
  for (const auto& c : endo_power(f, d).comps)
    if (!c.is_zero()) return false;
  return true;
}

/** Nontrivial Fitting split along f^d if one exists. */
inline bool fitting_split(const Representation& m, const ModuleMap& f,
                          Representation& ker_part, Representation& im_part) {
  std::size_t d = total_dim(m);
  ModuleMap g = endo_power(f, d);
  std::vector<Matrix> kb, ib;
  std::size_t kdim = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    kb.push_back(column_space(g.comps[v].kernel_basis()));
    ib.push_back(column_space(g.comps[v]));
    kdim += kb.back().cols();
  }
  if (kdim == 0 || kdim == d) return false;
  ker_part = sub_rep(m, kb);
  im_part = sub_rep(m, ib);
  return true;
}

}  // namespace detail

/** Indecomposable summands with multiplicities, via Fitting splits along
    endomorphism powers.  A piece counts as indecomposable once every
    endomorphism is invertible or nilpotent, certified by enumerating the
    endomorphism space when p^dim End <= 2^20; beyond that the decomposition
    is refused rather than guessed. */
inline std::vector<std::pair<Representation, std::size_t>> decompose(
    const Representation& m) {
  std::vector<Representation> pieces;
  std::vector<Representation> work{m};
  while (!work.empty()) {
    Representation cur = std::move(work.back());
    work.pop_back();
    if (total_dim(cur) == 0) continue;
    std::vector<ModuleMap> endos = hom_basis(cur, cur);
    Representation a, b;
    bool split = false;
    for (std::size_t i = 0; i < endos.size() && !split; ++i)
      split = detail::fitting_split(cur, endos[i], a, b);
    for (std::size_t i = 0; i < endos.size() && !split; ++i)
      for (std::size_t j = i + 1; j < endos.size() && !split; ++j)
        split = detail::fitting_split(cur, add_maps(endos[i], endos[j]), a, b);
    if (!split) {
      const std::uint32_t p = cur.alg->field().p;
      double count = 1;
      for (std::size_t i = 0; i < endos.size(); ++i) count *= p;
      if (count > double(1u << 20))
        throw UndecidedError(
            "decomposition undecided: endomorphism space too large to certify "
            "indecomposability");
      std::size_t d = total_dim(cur);
      std::vector<std::uint32_t> coef(endos.size(), 0);
      while (detail::next_tuple(coef, p)) {
        std::vector<Matrix> comps = detail::combine(endos, coef, cur, cur);
        if (detail::blocks_invertible(comps)) continue;
        ModuleMap f{cur, cur, comps};
        if (detail::is_nilpotent_endo(f, d)) continue;
        split = detail::fitting_split(cur, f, a, b);
        if (!split) throw Error("internal: non-unit non-nilpotent failed to split");
        break;
      }
    }
    if (split) {
      work.push_back(std::move(a));
      work.push_back(std::move(b));
    } else {
      pieces.push_back(std::move(cur));
    }
  }
  // Group isomorphic pieces, keeping first-seen order.
  std::vector<std::pair<Representation, std::size_t>> out;
  for (auto& piece : pieces) {
    bool found = false;
    for (auto& [rep, mult] : out)
      if (are_isomorphic(rep, piece)) {
        ++mult;
        found = true;
        break;
      }
    if (!found) out.emplace_back(std::move(piece), 1);
  }
  return out;
}

/** Dual module over the opposite algebra: same spaces, transposed actions. */
inline Representation dual_rep(const Representation& m) {
  Representation d;
  d.alg = m.alg->opposite();
  d.dims = m.dims;
  for (const auto& a : m.arrows) d.arrows.push_back(a.transpose());
  return d;
}

namespace detail {

inline std::string subspace_key(const std::vector<Matrix>& bases) {
  std::string key;
  for (const auto& b : bases) {
    key += std::to_string(b.cols());
    key += ':';
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        key += static_cast<char>('0' + (b.at(i, j) % 64));
    key += ';';
  }
  return key;
}

}  // namespace detail

/** Every submodule of M, as canonical per-vertex column spans: cyclic
    subrepresentations of all p^d vectors, then closure under pairwise sums.
    Only usable at desk scale: refuses when p^d exceeds `vector_cap` or the
    submodule count exceeds `count_cap`. */
inline std::vector<std::vector<Matrix>> all_submodules(
    const Representation& m, double vector_cap = double(1u << 16),
    std::size_t count_cap = 200000) {
  const Fp field = m.alg->field();
  const Quiver& q = m.alg->quiver();
  const std::size_t d = total_dim(m);
  double vectors = 1;
  for (std::size_t i = 0; i < d; ++i) vectors *= field.p;
  if (vectors > vector_cap)
    throw CapExceededError("submodule oracle: p^dim exceeds the cap");

  auto saturate = [&](std::vector<Matrix> sp) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        std::size_t s = q.arrows[a].source, t = q.arrows[a].target;
        if (sp[s].cols() == 0) continue;
        Matrix img = m.arrows[a] * sp[s];
        Matrix sum = subspace_sum(sp[t], img);
        if (sum.cols() != sp[t].cols()) {
          sp[t] = sum;
          changed = true;
        }
      }
    }
    return sp;
  };

  std::map<std::string, std::vector<Matrix>> found;
  std::vector<std::size_t> off(m.dims.size() + 1, 0);
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    off[v + 1] = off[v] + m.dims[v];
  std::vector<std::uint32_t> vec(d, 0);
  do {
    std::vector<Matrix> sp;
    for (std::size_t v = 0; v < m.dims.size(); ++v) {
      Matrix col(field, m.dims[v], 1);
      bool nz = false;
      for (std::size_t i = 0; i < m.dims[v]; ++i) {
        col.at(i, 0) = vec[off[v] + i];
        nz = nz || col.at(i, 0);
      }
      sp.push_back(nz ? col : Matrix(field, m.dims[v], 0));
    }
    sp = saturate(sp);
    for (auto& b : sp) b = column_space(b);
    found.emplace(detail::subspace_key(sp), sp);
    if (found.size() > count_cap)
      throw CapExceededError("submodule oracle: submodule count exceeds the cap");
  } while (detail::next_tuple(vec, field.p));

  std::vector<std::vector<Matrix>> subs;
  for (auto& [k, sp] : found) subs.push_back(sp);
  // Pairwise-sum closure to a fixpoint (sums of submodules are submodules).
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Matrix> sp;
      for (std::size_t v = 0; v < m.dims.size(); ++v)
        sp.push_back(subspace_sum(subs[i][v], subs[j][v]));
      std::string key = detail::subspace_key(sp);
      if (!found.count(key)) {
        found.emplace(key, sp);
        subs.push_back(sp);
        if (found.size() > count_cap)
          throw CapExceededError(
              "submodule oracle: submodule count exceeds the cap");
      }
    }
  std::vector<std::vector<Matrix>> out;
  found.clear();
  for (auto& sp : subs) found.emplace(detail::subspace_key(sp), sp);
  for (auto& [k, sp] : found) out.push_back(sp);
  return out;
}

/** Keeps one representative per isomorphism class; buckets by dimension
    vector, confirms by are_isomorphic. */
class IsoRegistry {
 public:
  std::size_t intern(const Representation& r) {
    std::string key;
    for (auto d : r.dims) key += std::to_string(d) + ",";
    auto& bucket = buckets_[key];
    for (std::size_t idx : bucket)
      if (are_isomorphic(reps_[idx], r)) return idx;
    reps_.push_back(r);
    bucket.push_back(reps_.size() - 1);
    return reps_.size() - 1;
  }
  const Representation& rep(std::size_t idx) const { return reps_[idx]; }
  std::size_t size() const { return reps_.size(); }

 private:
  std::vector<Representation> reps_;
  std::map<std::string, std::vector<std::size_t>> buckets_;
};

}  // namespace tautilt
