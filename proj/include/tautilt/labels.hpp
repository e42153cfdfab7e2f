#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tautilt/rep.hpp"

namespace tautilt {

/** Loewy word of a uniserial module: radical-layer composition factors
    joined by '/', top first ("2/3" = top S_2 over S_3).  Non-uniserial
    modules fall back to the dimension-vector form "(d1,d2,...)"; the zero
    module is "0". */
inline std::string label_module(const Representation& m) {
  if (total_dim(m) == 0) return "0";
  const auto& names = m.alg->quiver().vertices;
  std::vector<std::vector<std::size_t>> layers = loewy_layers(m);
  bool uniserial = true;
  for (const auto& layer : layers) {
    std::size_t s = 0;
    for (std::size_t d : layer) s += d;
    if (s != 1) {
      uniserial = false;
      break;
    }
  }
  if (uniserial) {
    std::string out;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      std::size_t v = 0;
      while (!layers[i][v]) ++v;
      if (i) out += '/';
      out += names[v];
    }
    return out;
  }
  std::string out = "(";
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    if (v) out += ',';
    out += std::to_string(m.dims[v]);
  }
  return out + ")";
}

/** Sorted summand labels joined by '+'; the empty list reads "0". */
inline std::string join_labels(std::vector<std::string> labels) {
  if (labels.empty()) return "0";
  std::sort(labels.begin(), labels.end());
  std::string out = labels[0];
  for (std::size_t i = 1; i < labels.size(); ++i) out += "+" + labels[i];
  return out;
}

/** Strict total order on concrete representations: label, then dimension
    vector, then raw arrow entries.  Used to store summand lists and order
    poset nodes deterministically. */
inline bool rep_less(const Representation& a, const Representation& b) {
  std::string la = label_module(a), lb = label_module(b);
  if (la != lb) return la < lb;
  if (a.dims != b.dims) return a.dims < b.dims;
  for (std::size_t i = 0; i < a.arrows.size(); ++i) {
    const Matrix &x = a.arrows[i], &y = b.arrows[i];
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c)
        if (x.at(r, c) != y.at(r, c)) return x.at(r, c) < y.at(r, c);
  }
  return false;
}

}  // namespace tautilt
