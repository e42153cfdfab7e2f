#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tautilt/errors.hpp"
#include "tautilt/homology.hpp"
#include "tautilt/labels.hpp"
#include "tautilt/rep.hpp"

namespace tautilt {

/** Support pair (M, P): pairwise non-isomorphic indecomposable module
    summands plus the vertices of the dropped projectives, kept sorted. */
struct STPair {
  AlgebraPtr alg;
  std::vector<Representation> summands;
  std::vector<std::size_t> proj_part;
};

struct Semibrick {
  std::vector<Representation> bricks;
};

inline Representation pair_module(const STPair& pair) {
  return direct_sum(pair.alg, pair.summands);
}

/** τ-rigidity, vanishing of the module at every dropped vertex (that space
    is Hom from the dropped projective), and the summand-count equation. */
inline bool is_stau_pair(const Representation& m,
                         const std::vector<std::size_t>& proj) {
  const AlgebraPtr& alg = m.alg;
  std::vector<bool> seen(alg->vertex_count(), false);
  for (std::size_t v : proj) {
    if (v >= alg->vertex_count())
      throw InvalidInputError("projective-part vertex out of range");
    if (seen[v]) throw InvalidInputError("repeated projective-part vertex");
    seen[v] = true;
  }
  for (std::size_t v : proj)
    if (m.dims[v] != 0) return false;
  if (decompose(m).size() + proj.size() != alg->vertex_count()) return false;
  return is_tau_rigid(m);
}

inline bool is_stau_pair(const STPair& pair) {
  return is_stau_pair(pair_module(pair), pair.proj_part);
}

/** Same projective part and isomorphic summand multisets. */
inline bool same_pair(const STPair& a, const STPair& b) {
  if (a.proj_part != b.proj_part) return false;
  if (a.summands.size() != b.summands.size()) return false;
  std::vector<bool> used(b.summands.size(), false);
  for (const auto& s : a.summands) {
    bool found = false;
    for (std::size_t k = 0; k < b.summands.size(); ++k) {
      if (used[k] || s.dims != b.summands[k].dims) continue;
      if (are_isomorphic(s, b.summands[k])) {
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/** Exchange at summand i, downward only.  Returns nullopt when X_i already
    lies in Fac of the other summands (the exchange there goes upward).
    Otherwise the cokernel of the universal map into add U either yields the
    single replacement summand or, when nothing new survives, drops the one
    support vertex that keeps the pair valid. */
inline std::optional<STPair> left_mutation(const STPair& pair, std::size_t i) {
  const AlgebraPtr& alg = pair.alg;
  if (i >= pair.summands.size())
    throw InvalidInputError("summand index out of range");
  const Representation& x = pair.summands[i];
  std::vector<Representation> u;
  for (std::size_t j = 0; j < pair.summands.size(); ++j)
    if (j != i) u.push_back(pair.summands[j]);
  Representation usum = direct_sum(alg, u);

  if (trace(usum, x).rep.dims == x.dims) return std::nullopt;

  std::vector<Representation> tparts;
  std::vector<ModuleMap> rows;
  for (const auto& uj : u)
    for (const auto& f : hom_basis(x, uj)) {
      tparts.push_back(uj);
      rows.push_back(f);
    }
  ModuleMap univ = zero_map(x, direct_sum(alg, tparts));
  std::vector<std::size_t> off(alg->vertex_count(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
      univ.comps[v].set_block(off[v], 0, rows[r].comps[v]);
      off[v] += tparts[r].dims[v];
    }
  Representation coker = map_parts(univ).cokernel;

  std::vector<Representation> fresh;
  std::size_t fresh_mult = 0;
  for (auto& [part, mult] : decompose(coker)) {
    bool in_add_u = false;
    for (const auto& uj : u)
      if (part.dims == uj.dims && are_isomorphic(part, uj)) {
        in_add_u = true;
        break;
      }
    if (!in_add_u) {
      fresh.push_back(std::move(part));
      fresh_mult += mult;
    }
  }

  STPair next;
  next.alg = alg;
  next.summands = std::move(u);
  next.proj_part = pair.proj_part;
  if (fresh.empty()) {
    // U stays τ-rigid and the count equation holds for any one added
    // vertex, so the completion candidates are exactly the vertices outside
    // P where U vanishes.  Uniqueness is asserted, not assumed.
    std::vector<std::size_t> cand;
    if (is_tau_rigid(usum)) {
      for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        if (usum.dims[v] != 0) continue;
        if (std::find(next.proj_part.begin(), next.proj_part.end(), v) !=
            next.proj_part.end())
          continue;
        cand.push_back(v);
      }
    }
    if (cand.size() != 1)
      throw AmbiguousCompletionError(
          "support completion after mutation is not unique");
    next.proj_part.push_back(cand[0]);
    std::sort(next.proj_part.begin(), next.proj_part.end());
  } else if (fresh.size() == 1 && fresh_mult == 1) {
    next.summands.push_back(std::move(fresh[0]));
  } else {
    throw AmbiguousCompletionError(
        "mutation cokernel left more than one new summand");
  }
  std::sort(next.summands.begin(), next.summands.end(), rep_less);
  return next;
}

/** p1 ≤ p2 in the generation order: every summand of p1 is generated by
    p2's module. */
inline bool fac_leq(const STPair& p1, const STPair& p2) {
  if (p1.alg.get() != p2.alg.get())
    throw InvalidInputError("pairs live over different algebras");
  Representation m2 = pair_module(p2);
  for (const auto& s : p1.summands)
    if (!in_fac(m2, s)) return false;
  return true;
}

/** Heads of the summands over the endomorphism ring: divide each M_i by the
    traces of the other summands plus the images of its own non-invertible
    endomorphisms (every radical endomorphism is a basis element shifted by
    the scalar it reduces to), keep the nonzero quotients, deduplicate. */
inline Semibrick phi(const STPair& pair) {
  const AlgebraPtr& alg = pair.alg;
  const std::uint32_t p = alg->field().p;
  Semibrick sb;
  for (std::size_t i = 0; i < pair.summands.size(); ++i) {
    const Representation& mi = pair.summands[i];
    std::vector<Matrix> rad;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v)
      rad.push_back(Matrix(alg->field(), mi.dims[v], 0));
    for (std::size_t j = 0; j < pair.summands.size(); ++j) {
      if (j == i) continue;
      SubRep t = trace(pair.summands[j], mi);
      for (std::size_t v = 0; v < rad.size(); ++v)
        rad[v] = subspace_sum(rad[v], t.bases[v]);
    }
    ModuleMap id = identity_map(mi);
    for (const auto& g : hom_basis(mi, mi))
      for (std::uint32_t c = 0; c < p; ++c) {
        ModuleMap h = add_maps(g, scale_map((p - c) % p, id));
        if (detail::blocks_invertible(h.comps)) continue;
        for (std::size_t v = 0; v < rad.size(); ++v)
          rad[v] = subspace_sum(rad[v], column_space(h.comps[v]));
      }
    Representation q = quot_rep(mi, rad);
    if (total_dim(q) == 0) continue;
    bool dup = false;
    for (const auto& b : sb.bricks)
      if (b.dims == q.dims && are_isomorphic(b, q)) {
        dup = true;
        break;
      }
    if (!dup) sb.bricks.push_back(std::move(q));
  }
  return sb;
}

inline bool is_semibrick(const std::vector<Representation>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    if (hom_dim(set[i], set[i]) != 1) return false;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j)
      if (i != j && hom_dim(set[i], set[j]) != 0) return false;
  return true;
}

inline bool is_semibrick(const Semibrick& sb) { return is_semibrick(sb.bricks); }

inline bool same_brick_set(const Semibrick& a, const Semibrick& b) {
  if (a.bricks.size() != b.bricks.size()) return false;
  std::vector<bool> used(b.bricks.size(), false);
  for (const auto& x : a.bricks) {
    bool found = false;
    for (std::size_t k = 0; k < b.bricks.size(); ++k) {
      if (used[k] || x.dims != b.bricks[k].dims) continue;
      if (are_isomorphic(x, b.bricks[k])) {
        used[k] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

inline bool is_sincere(const Representation& m) {
  for (std::size_t d : m.dims)
    if (d == 0) return false;
  return true;
}

struct STNode {
  STPair pair;
  std::size_t depth = 0;
  std::vector<std::string> summand_labels;  // sorted like the summands
  std::string label;  // summand words + '|' + dropped vertex names
  Semibrick bricks;
  bool sincere = false;
};

struct STEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string mutated;  // label of the exchanged summand
};

struct STPoset {
  AlgebraPtr alg;
  std::vector<STNode> nodes;
  std::vector<STEdge> edges;
};

struct EnumerateOptions {
  std::size_t node_cap = 10000;
  std::size_t dim_cap = 64;
  std::size_t threads = 1;
};

namespace detail {

inline STNode make_node(STPair pair, std::size_t depth, std::size_t dim_cap) {
  for (const auto& s : pair.summands)
    if (total_dim(s) > dim_cap)
      throw CapExceededError(
          "summand dimension exceeds the cap; enumeration may not terminate");
  STNode node;
  node.depth = depth;
  for (const auto& s : pair.summands)
    node.summand_labels.push_back(label_module(s));
  // Summands are pairwise non-isomorphic, so a repeated word (possible for
  // dimension-vector fallbacks) gets a positional index within the node.
  std::map<std::string, std::size_t> seen;
  for (auto& l : node.summand_labels)
    if (std::size_t n = ++seen[l]; n > 1) l += "#" + std::to_string(n);
  node.label = join_labels(node.summand_labels) + "|";
  const auto& names = pair.alg->quiver().vertices;
  for (std::size_t k = 0; k < pair.proj_part.size(); ++k) {
    if (k) node.label += ",";
    node.label += names[pair.proj_part[k]];
  }
  node.bricks = phi(pair);
  node.sincere = is_sincere(pair_module(pair));
  node.pair = std::move(pair);
  return node;
}

/** Runs fn(0), ..., fn(count-1), across worker threads when threads > 1.
    All tasks drain before the first failure, in task order, is rethrown, so
    the surviving exception does not depend on scheduling. */
inline void run_tasks(std::size_t count, std::size_t threads,
                      const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t t) {
    try {
      fn(t);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads <= 1 || count < 2) {
    for (std::size_t t = 0; t < count; ++t) run(t);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(threads, count); ++w)
      pool.emplace_back([&] {
        for (std::size_t t; (t = cursor.fetch_add(1)) < count;) run(t);
      });
    for (auto& th : pool) th.join();
  }
  for (std::size_t t = 0; t < count; ++t)
    if (errors[t]) std::rethrow_exception(errors[t]);
}

}  // namespace detail

/** Breadth-first closure of the top pair (all projectives, no drops) under
    downward mutation.  Frontier expansion may run on several threads; the
    merge and the final (depth, label) ordering are sequential, so the output
    does not depend on scheduling. */
inline STPoset enumerate_stau(const AlgebraPtr& alg,
                              const EnumerateOptions& opt = {}) {
  STPoset poset;
  poset.alg = alg;

  std::map<std::string, std::vector<std::size_t>> registry;
  auto find_node = [&](const STNode& node) -> std::optional<std::size_t> {
    auto it = registry.find(node.label);
    if (it == registry.end()) return std::nullopt;
    for (std::size_t id : it->second)
      if (same_pair(poset.nodes[id].pair, node.pair)) return id;
    return std::nullopt;
  };

  STPair top;
  top.alg = alg;
  for (std::size_t v = 0; v < alg->vertex_count(); ++v)
    top.summands.push_back(standard_module(alg, StdKind::Projective, v));
  std::sort(top.summands.begin(), top.summands.end(), rep_less);
  poset.nodes.push_back(detail::make_node(std::move(top), 0, opt.dim_cap));
  registry[poset.nodes[0].label].push_back(0);

  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t id : frontier)
      for (std::size_t i = 0; i < poset.nodes[id].pair.summands.size(); ++i)
        tasks.emplace_back(id, i);

    std::vector<std::optional<STPair>> results(tasks.size());
    detail::run_tasks(tasks.size(), opt.threads, [&](std::size_t t) {
      results[t] =
          left_mutation(poset.nodes[tasks[t].first].pair, tasks[t].second);
    });

    std::vector<std::size_t> next;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (!results[t]) continue;
      std::size_t from = tasks[t].first;
      STNode cand = detail::make_node(std::move(*results[t]),
                                      poset.nodes[from].depth + 1, opt.dim_cap);
      std::size_t to;
      if (auto found = find_node(cand)) {
        to = *found;
      } else {
        if (poset.nodes.size() >= opt.node_cap)
          throw CapExceededError("node cap exceeded during enumeration");
        to = poset.nodes.size();
        registry[cand.label].push_back(to);
        poset.nodes.push_back(std::move(cand));
        next.push_back(to);
      }
      poset.edges.push_back(
          {from, to, poset.nodes[from].summand_labels[tasks[t].second]});
    }
    frontier = std::move(next);
  }

  // Canonical order: depth, then label; discovery order breaks ties.
  std::vector<std::size_t> order(poset.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const STNode &na = poset.nodes[a], &nb = poset.nodes[b];
                     if (na.depth != nb.depth) return na.depth < nb.depth;
                     return na.label < nb.label;
                   });
  std::vector<std::size_t> perm(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) perm[order[i]] = i;
  std::vector<STNode> sorted;
  sorted.reserve(poset.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    sorted.push_back(std::move(poset.nodes[order[i]]));
  poset.nodes = std::move(sorted);
  for (auto& e : poset.edges) {
    e.from = perm[e.from];
    e.to = perm[e.to];
  }
  std::sort(poset.edges.begin(), poset.edges.end(),
            [](const STEdge& a, const STEdge& b) {
              if (a.from != b.from) return a.from < b.from;
              if (a.to != b.to) return a.to < b.to;
              return a.mutated < b.mutated;
            });
  return poset;
}

inline const STNode& pt_lookup(const Semibrick& sb, const STPoset& poset) {
  for (const auto& node : poset.nodes)
    if (same_brick_set(sb, node.bricks)) return node;
  throw NotFoundError("no enumerated pair has this semibrick image");
}

/** Candidate lies in Fac M and has no extensions by the quotient family of
    M ⊕ M, the finite stand-in for Fac M at desk scale. */
inline bool ext_projective_check(const STPair& pair,
                                 const Representation& cand) {
  Representation m = pair_module(pair);
  require_same_algebra(m, cand);
  if (!in_fac(m, cand)) return false;
  ProjPresentation pr = min_presentation(cand);
  Representation m2 = direct_sum(pair.alg, {m, m});
  for (const auto& u : all_submodules(m2))
    if (ext1_dim(pr, quot_rep(m2, u)) != 0) return false;
  return true;
}

}  // namespace tautilt
