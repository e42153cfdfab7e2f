#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "tautilt/errors.hpp"
#include "tautilt/fp.hpp"

namespace tautilt {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

/** Finite quiver with named vertices and arrows.  Vertex and arrow order is
    part of the value: bases, labels and emitted files all follow it. */
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::size_t vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return i;
    throw InvalidInputError("unknown vertex: " + name);
  }
  std::size_t arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return i;
    throw InvalidInputError("unknown arrow: " + name);
  }
  bool has_vertex(const std::string& name) const {
    for (const auto& v : vertices)
      if (v == name) return true;
    return false;
  }
  bool has_arrow(const std::string& name) const {
    for (const auto& a : arrows)
      if (a.name == name) return true;
    return false;
  }

  void validate() const {
    if (vertices.empty()) throw InvalidInputError("quiver has no vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (vertices[i] == vertices[j])
          throw InvalidInputError("duplicate vertex name: " + vertices[i]);
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (arrows[i].source >= vertices.size() ||
          arrows[i].target >= vertices.size())
        throw InvalidInputError("arrow endpoint out of range: " +
                                arrows[i].name);
      for (std::size_t j = i + 1; j < arrows.size(); ++j)
        if (arrows[i].name == arrows[j].name)
          throw InvalidInputError("duplicate arrow name: " + arrows[i].name);
    }
  }

  /** Same vertices, every arrow reversed; arrow names and order preserved. */
  Quiver opposite() const {
    Quiver q = *this;
    for (auto& a : q.arrows) std::swap(a.source, a.target);
    return q;
  }
};

/** One summand of a relation: coeff times a composable arrow word.
    Words read left to right: {a, b} is "a then b". */
struct RelationTerm {
  std::uint32_t coeff = 1;
  std::vector<std::size_t> arrows;
};

struct RelationSpec {
  std::vector<RelationTerm> terms;

  /** Checks composability, a common source and target across terms, and
      admissibility (every word has length >= 2). */
  void validate(const Quiver& q, const Fp& field) const {
    if (terms.empty()) throw InvalidInputError("empty relation");
    std::size_t src = 0, tgt = 0;
    bool first = true;
    for (const auto& t : terms) {
      if (t.coeff == 0 || t.coeff >= field.p)
        throw InvalidInputError("relation coefficient out of range");
      if (t.arrows.size() < 2)
        throw NonAdmissibleError(
            "relation term has length < 2; admissible relations lie in the "
            "square of the arrow ideal");
      for (std::size_t k = 0; k < t.arrows.size(); ++k) {
        if (t.arrows[k] >= q.arrows.size())
          throw InvalidInputError("relation references unknown arrow");
        if (k > 0 &&
            q.arrows[t.arrows[k - 1]].target != q.arrows[t.arrows[k]].source)
          throw InvalidInputError("relation word is not composable");
      }
      std::size_t s = q.arrows[t.arrows.front()].source;
      std::size_t e = q.arrows[t.arrows.back()].target;
      if (first) {
        src = s;
        tgt = e;
        first = false;
      } else if (s != src || e != tgt) {
        throw InvalidInputError("relation terms are not parallel");
      }
    }
  }

  RelationSpec reversed() const {
    RelationSpec r = *this;
    for (auto& t : r.terms) std::reverse(t.arrows.begin(), t.arrows.end());
    return r;
  }
};

}  // namespace tautilt
