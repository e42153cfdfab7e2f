#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tautilt/algebra.hpp"
#include "tautilt/errors.hpp"
#include "tautilt/matrix.hpp"
#include "tautilt/rep.hpp"

namespace tautilt {

/** P0 = ⊕_v P_v^{dim(top M)_v} with an epimorphism onto M whose kernel lies
    in rad P0.  `summands` records the vertex of each indecomposable copy,
    grouped by vertex in declared order. */
struct ProjectiveCover {
  std::vector<std::size_t> summands;
  Representation p0;
  ModuleMap epi;
};

/** Minimal presentation P1 -> P0 -> M -> 0.  Entry d[k][l] lies in
    e_{i_k} A e_{j_l} (paths i_k -> j_l) where i_k, j_l are the vertices of
    the k-th P0 and l-th P1 summand; the component map P_{j_l} -> P_{i_k} is
    left multiplication by it.  d_map realizes the whole matrix on the
    path-coordinate direct sums, and image(d_map) = kernel(epi). */
struct ProjPresentation {
  std::vector<std::size_t> p0_summands;
  std::vector<std::size_t> p1_summands;
  Representation p0;
  Representation p1;
  std::vector<std::vector<AlgebraElement>> d;
  ModuleMap epi;
  ModuleMap d_map;
};

struct TauResult {
  Representation module;
  ProjPresentation pres;
};

namespace detail {

/** Per-copy, per-vertex column offsets inside ⊕_k P_{summands[k]}. */
inline std::vector<std::vector<std::size_t>> summand_offsets(
    const AlgebraPtr& alg, const std::vector<std::size_t>& summands) {
  std::size_t nv = alg->vertex_count();
  std::vector<std::vector<std::size_t>> off(summands.size(),
                                            std::vector<std::size_t>(nv, 0));
  std::vector<std::size_t> run(nv, 0);
  for (std::size_t k = 0; k < summands.size(); ++k)
    for (std::size_t w = 0; w < nv; ++w) {
      off[k][w] = run[w];
      run[w] += alg->pair_basis(summands[k], w).size();
    }
  return off;
}

/** Index of the trivial path inside pair_basis(v, v). */
inline std::size_t trivial_index(const AlgebraPtr& alg, std::size_t v) {
  const auto& pb = alg->pair_basis(v, v);
  auto it = std::find(pb.begin(), pb.end(), alg->trivial_basis(v));
  if (it == pb.end()) throw Error("internal: trivial path missing from e_vAe_v");
  return static_cast<std::size_t>(it - pb.begin());
}

}  // namespace detail

/** Projective cover: one copy of P_v per top basis vector at v, mapped by
    acting with each path coordinate on a lift of that vector. */
inline ProjectiveCover projective_cover(const Representation& m) {
  const AlgebraPtr& alg = m.alg;
  std::size_t nv = alg->vertex_count();
  std::vector<Matrix> rad = radical_subspaces(m);

  ProjectiveCover c;
  std::vector<Representation> parts;
  std::vector<Matrix> lifts;  // per copy: a column vector in M at its vertex
  for (std::size_t v = 0; v < nv; ++v) {
    Matrix section = quotient_map(rad[v]).section;
    for (std::size_t i = 0; i < section.cols(); ++i) {
      c.summands.push_back(v);
      parts.push_back(standard_module(alg, StdKind::Projective, v));
      lifts.push_back(section.col(i));
    }
  }
  c.p0 = direct_sum(alg, parts);

  c.epi = zero_map(c.p0, m);
  std::vector<std::size_t> col(nv, 0);
  for (std::size_t k = 0; k < c.summands.size(); ++k) {
    std::size_t v = c.summands[k];
    for (std::size_t w = 0; w < nv; ++w) {
      for (std::size_t p : alg->pair_basis(v, w)) {
        Matrix img = word_matrix(m, v, alg->basis()[p].arrows) * lifts[k];
        for (std::size_t r = 0; r < m.dims[w]; ++r)
          c.epi.comps[w].at(r, col[w]) = img.at(r, 0);
        ++col[w];
      }
    }
  }
  return c;
}

/** Cover of M, then cover of its kernel; entries read off the realized map
    at the generator columns. */
inline ProjPresentation min_presentation(const Representation& m) {
  const AlgebraPtr& alg = m.alg;
  ProjectiveCover c0 = projective_cover(m);
  MapParts parts = map_parts(c0.epi);
  ProjectiveCover c1 = projective_cover(parts.kernel);

  ProjPresentation pr;
  pr.p0_summands = c0.summands;
  pr.p0 = c0.p0;
  pr.epi = c0.epi;
  pr.p1_summands = c1.summands;
  pr.p1 = c1.p0;
  pr.d_map = compose(parts.kernel_inclusion, c1.epi);

  auto off0 = detail::summand_offsets(alg, pr.p0_summands);
  auto off1 = detail::summand_offsets(alg, pr.p1_summands);
  pr.d.assign(pr.p0_summands.size(),
              std::vector<AlgebraElement>(pr.p1_summands.size(),
                                          alg->zero_element()));
  for (std::size_t l = 0; l < pr.p1_summands.size(); ++l) {
    std::size_t j = pr.p1_summands[l];
    std::size_t gen = off1[l][j] + detail::trivial_index(alg, j);
    for (std::size_t k = 0; k < pr.p0_summands.size(); ++k) {
      std::size_t i = pr.p0_summands[k];
      const auto& pb = alg->pair_basis(i, j);
      for (std::size_t r = 0; r < pb.size(); ++r)
        pr.d[k][l].coeffs[pb[r]] = pr.d_map.comps[j].at(off0[k][j] + r, gen);
    }
  }
  return pr;
}

/** The presentation matrix pushed through P_i -> I_i: entry q in
    e_{i_k} A e_{j_l} becomes the transposed right-multiplication action
    I_{j_l} -> I_{i_k}, assembled blockwise per vertex. */
inline ModuleMap nu_map(const ProjPresentation& pr) {
  const AlgebraPtr& alg = pr.p0.alg;
  std::size_t nv = alg->vertex_count();
  std::vector<Representation> tparts, sparts;
  for (std::size_t i : pr.p0_summands)
    tparts.push_back(standard_module(alg, StdKind::Injective, i));
  for (std::size_t j : pr.p1_summands)
    sparts.push_back(standard_module(alg, StdKind::Injective, j));
  ModuleMap f = zero_map(direct_sum(alg, sparts), direct_sum(alg, tparts));

  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t ro = 0;
    for (std::size_t k = 0; k < pr.p0_summands.size(); ++k) {
      std::size_t i = pr.p0_summands[k];
      std::size_t co = 0;
      for (std::size_t l = 0; l < pr.p1_summands.size(); ++l) {
        std::size_t j = pr.p1_summands[l];
        f.comps[v].set_block(
            ro, co, alg->right_mul_matrix(pr.d[k][l], i, j, v).transpose());
        co += alg->pair_basis(v, j).size();
      }
      ro += alg->pair_basis(v, i).size();
    }
  }
  return f;
}

/** Translate: kernel of the injective-coordinate image of the minimal
    presentation.  Zero exactly when the input is projective. */
inline TauResult tau(const Representation& m) {
  TauResult t;
  t.pres = min_presentation(m);
  t.module = map_parts(nu_map(t.pres)).kernel;
  return t;
}

/** Inverse translate, computed from the minimal injective copresentation:
    that copresentation is the vector-space dual of the minimal projective
    presentation of the dual module over the opposite algebra, so translating
    there and dualizing back realizes it without a second code path. */
inline Representation tau_inv(const Representation& m) {
  return dual_rep(tau(dual_rep(m)).module);
}

/** dim coker( Hom(P0, N) -> Hom(P1, N) ) for a minimal presentation of M.
    Hom(P_i, N) is N at i in path coordinates, so the map is the block matrix
    of the entry actions on N. */
inline std::size_t ext1_dim(const ProjPresentation& pr,
                            const Representation& n) {
  require_same_algebra(pr.p0, n);
  std::size_t rows = 0, cols = 0;
  for (std::size_t j : pr.p1_summands) rows += n.dims[j];
  for (std::size_t i : pr.p0_summands) cols += n.dims[i];
  Matrix e(n.alg->field(), rows, cols);
  std::size_t ro = 0;
  for (std::size_t l = 0; l < pr.p1_summands.size(); ++l) {
    std::size_t co = 0;
    for (std::size_t k = 0; k < pr.p0_summands.size(); ++k) {
      e.set_block(ro, co,
                  element_action(n, pr.d[k][l], pr.p0_summands[k],
                                 pr.p1_summands[l]));
      co += n.dims[pr.p0_summands[k]];
    }
    ro += n.dims[pr.p1_summands[l]];
  }
  return rows - e.rank();
}

inline std::size_t ext1_dim(const Representation& m, const Representation& n) {
  require_same_algebra(m, n);
  return ext1_dim(min_presentation(m), n);
}

inline bool is_tau_rigid(const Representation& m) {
  return hom_basis(m, tau(m).module).empty();
}

}  // namespace tautilt
