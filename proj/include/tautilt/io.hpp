#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tautilt/algebra.hpp"
#include "tautilt/errors.hpp"
#include "tautilt/labels.hpp"
#include "tautilt/rep.hpp"
#include "tautilt/tilting.hpp"

namespace tautilt {

inline constexpr const char* kToolName = "tautilt";
inline constexpr const char* kToolVersion = "0.1.0";

/** Parsed algebra description: quiver, relations, and field order.  Kept
    separate from Algebra so files can be re-emitted byte-identically. */
struct AlgebraFile {
  Quiver quiver;
  std::vector<RelationSpec> relations;
  std::uint32_t p = 2;

  AlgebraPtr build(BuildOptions opt = {}) const {
    return Algebra::build(quiver, relations, Fp(p), opt);
  }
};

namespace detail {

/** Character scanner over one logical line; reports the line on errors. */
struct LineCursor {
  std::string_view s;
  std::size_t i = 0;
  std::size_t line = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool at_end() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool match(char c) {
    if (peek() != c) return false;
    ++i;
    return true;
  }
  void expect(char c, const std::string& what) {
    if (!match(c)) throw ParseError("expected '" + std::string(1, c) + "' " + what, line);
  }
  static bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  }
  std::string ident(const std::string& what) {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && ident_char(s[i])) ++i;
    if (i == start) throw ParseError("expected " + what, line);
    return std::string(s.substr(start, i - start));
  }
  bool peek_digit() {
    skip_ws();
    return i < s.size() && s[i] >= '0' && s[i] <= '9';
  }
  std::uint64_t integer(const std::string& what) {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start) throw ParseError("expected " + what, line);
    std::uint64_t v = 0;
    for (std::size_t k = start; k < i; ++k) {
      v = v * 10 + std::uint64_t(s[k] - '0');
      if (v > (1ull << 40)) throw ParseError("integer too large", line);
    }
    return v;
  }
  void expect_end() {
    if (!at_end())
      throw ParseError("unexpected trailing text '" + std::string(s.substr(i)) + "'", line);
  }
};

/** Splits text into (line number, content) pairs with comments stripped. */
inline std::vector<std::pair<std::size_t, std::string>> logical_lines(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t line = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string raw = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    ++line;
    if (std::size_t h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::size_t b = raw.find_first_not_of(" \t\r");
    if (b != std::string::npos) {
      std::size_t e = raw.find_last_not_of(" \t\r");
      out.emplace_back(line, raw.substr(b, e - b + 1));
    }
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return out;
}

/** term := (INT '*')? ARROW ('*' ARROW)*, terms joined by '+' or '-'. */
inline RelationSpec parse_relation_expr(LineCursor& c, const Quiver& q,
                                        std::uint32_t p) {
  RelationSpec r;
  bool negative = c.match('-');
  if (!negative) c.match('+');
  while (true) {
    std::uint64_t coeff = 1;
    if (c.peek_digit()) {
      coeff = c.integer("coefficient");
      c.expect('*', "after coefficient");
    }
    RelationTerm term;
    term.coeff = std::uint32_t(coeff % p);
    if (negative) term.coeff = std::uint32_t((p - term.coeff) % p);
    if (term.coeff == 0)
      throw ParseError("term coefficient vanishes in the field", c.line);
    while (true) {
      if (c.peek_digit())
        throw ParseError("coefficient must lead its term", c.line);
      std::string name = c.ident("arrow name");
      if (!q.has_arrow(name))
        throw ParseError("unknown arrow '" + name + "'", c.line);
      term.arrows.push_back(q.arrow_index(name));
      if (!c.match('*')) break;
    }
    r.terms.push_back(std::move(term));
    if (c.at_end()) break;
    if (c.match('-'))
      negative = true;
    else if (c.match('+'))
      negative = false;
    else
      throw ParseError("expected '+' or '-' between terms", c.line);
  }
  return r;
}

}  // namespace detail

/** Reads the line-oriented algebra format: `field p`, `vertices n1 n2 ...`,
    `arrow name : src -> tgt`, `relation a*b - 2*c*d`.  Lines may come in any
    order; `#` starts a comment; errors carry 1-based line numbers. */
inline AlgebraFile parse_algebra(const std::string& text) {
  AlgebraFile f;
  bool saw_field = false, saw_vertices = false;
  std::size_t field_line = 0;
  struct RawArrow {
    std::string name, src, tgt;
    std::size_t line;
  };
  std::vector<RawArrow> raw_arrows;
  std::vector<std::pair<std::size_t, std::string>> raw_relations;

  for (const auto& [line_no, content] : detail::logical_lines(text)) {
    detail::LineCursor c{content, 0, line_no};
    std::string key = c.ident("directive");
    if (key == "field") {
      if (saw_field) throw ParseError("duplicate field line", line_no);
      saw_field = true;
      field_line = line_no;
      std::uint64_t p = c.integer("field order");
      c.expect_end();
      if (p < 2 || p > 1000003) throw ParseError("field order out of range", line_no);
      f.p = std::uint32_t(p);
    } else if (key == "vertices") {
      if (saw_vertices) throw ParseError("duplicate vertices line", line_no);
      saw_vertices = true;
      while (!c.at_end()) {
        std::string name = c.ident("vertex name");
        if (f.quiver.has_vertex(name))
          throw ParseError("duplicate vertex name '" + name + "'", line_no);
        f.quiver.vertices.push_back(std::move(name));
      }
      if (f.quiver.vertices.empty())
        throw ParseError("vertices line names no vertices", line_no);
    } else if (key == "arrow") {
      RawArrow a;
      a.name = c.ident("arrow name");
      if (a.name[0] >= '0' && a.name[0] <= '9')
        throw ParseError("arrow name must not begin with a digit", line_no);
      c.expect(':', "after arrow name");
      a.src = c.ident("source vertex");
      c.expect('-', "in '->'");
      c.expect('>', "in '->'");
      a.tgt = c.ident("target vertex");
      c.expect_end();
      a.line = line_no;
      raw_arrows.push_back(std::move(a));
    } else if (key == "relation") {
      c.skip_ws();
      raw_relations.emplace_back(line_no, std::string(c.s.substr(c.i)));
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no);
    }
  }

  if (!saw_field) throw ParseError("missing field line");
  if (!saw_vertices) throw ParseError("missing vertices line");
  try {
    Fp(f.p);  // rejects non-prime orders before any arithmetic
  } catch (const InvalidInputError& e) {
    throw ParseError(e.what(), field_line);
  }
  for (const auto& a : raw_arrows) {
    if (f.quiver.has_arrow(a.name))
      throw ParseError("duplicate arrow name '" + a.name + "'", a.line);
    if (!f.quiver.has_vertex(a.src))
      throw ParseError("unknown vertex '" + a.src + "'", a.line);
    if (!f.quiver.has_vertex(a.tgt))
      throw ParseError("unknown vertex '" + a.tgt + "'", a.line);
    f.quiver.arrows.push_back(
        {a.name, f.quiver.vertex_index(a.src), f.quiver.vertex_index(a.tgt)});
  }
  f.quiver.validate();
  for (const auto& [line_no, expr] : raw_relations) {
    detail::LineCursor c{expr, 0, line_no};
    f.relations.push_back(detail::parse_relation_expr(c, f.quiver, f.p));
  }
  return f;
}

/** Canonical emission: field, vertices, arrows, relations, one per line,
    single spaces, coefficients printed only when they differ from 1. */
inline std::string emit_algebra(const AlgebraFile& f) {
  std::ostringstream out;
  out << "field " << f.p << "\n";
  out << "vertices";
  for (const auto& v : f.quiver.vertices) out << " " << v;
  out << "\n";
  for (const auto& a : f.quiver.arrows)
    out << "arrow " << a.name << " : " << f.quiver.vertices[a.source] << " -> "
        << f.quiver.vertices[a.target] << "\n";
  for (const auto& r : f.relations) {
    out << "relation ";
    for (std::size_t t = 0; t < r.terms.size(); ++t) {
      if (t) out << " + ";
      if (r.terms[t].coeff != 1) out << r.terms[t].coeff << "*";
      for (std::size_t k = 0; k < r.terms[t].arrows.size(); ++k) {
        if (k) out << "*";
        out << f.quiver.arrows[r.terms[t].arrows[k]].name;
      }
    }
    out << "\n";
  }
  return out.str();
}

/** Result of Algebra -> AlgebraFile: lets derived algebras (extensions) be
    emitted in the same canonical text form. */
inline AlgebraFile algebra_file_of(const AlgebraPtr& alg) {
  AlgebraFile f;
  f.quiver = alg->quiver();
  f.relations = alg->relations();
  f.p = alg->field().p;
  return f;
}

namespace detail {

inline Representation parse_module_expr(LineCursor& c, const AlgebraPtr& alg) {
  std::string head = c.ident("module expression");
  if (head == "0") return zero_rep(alg);
  if (head == "sum") {
    c.expect('[', "after 'sum'");
    std::vector<Representation> parts;
    if (!c.match(']')) {
      while (true) {
        parts.push_back(parse_module_expr(c, alg));
        if (c.match(']')) break;
        c.expect(',', "between summands");
      }
    }
    return direct_sum(alg, parts);
  }
  StdKind kind;
  if (head == "S")
    kind = StdKind::Simple;
  else if (head == "P")
    kind = StdKind::Projective;
  else if (head == "I")
    kind = StdKind::Injective;
  else
    throw ParseError("unknown module constructor '" + head + "'", c.line);
  c.expect('(', "after constructor");
  std::string v = c.ident("vertex name");
  if (!alg->quiver().has_vertex(v))
    throw ParseError("unknown vertex '" + v + "'", c.line);
  c.expect(')', "after vertex name");
  return standard_module(alg, kind, alg->quiver().vertex_index(v));
}

}  // namespace detail

/** Reads a module file over a fixed algebra.  Constructor form:
    `module S(2)`, `module sum[P(1),S(3)]`, `module 0`.  Explicit form:
    `module explicit`, a `dims` line, then one `arrow name e11 e12 ...` line
    per arrow (row-major, rows = target dim); entries are reduced mod p and
    the result must satisfy every relation. */
inline Representation parse_module(const std::string& text,
                                   const AlgebraPtr& alg) {
  auto lines = detail::logical_lines(text);
  if (lines.empty()) throw ParseError("empty module file");
  detail::LineCursor first{lines[0].second, 0, lines[0].first};
  if (first.ident("directive") != "module")
    throw ParseError("module file must start with 'module'", lines[0].first);

  detail::LineCursor probe = first;
  if (probe.ident("module form") != "explicit") {
    Representation r = detail::parse_module_expr(first, alg);
    first.expect_end();
    if (lines.size() > 1)
      throw ParseError("unexpected line after module expression", lines[1].first);
    return r;
  }
  first = probe;
  first.expect_end();
  const Quiver& q = alg->quiver();
  const std::uint32_t p = alg->field().p;
  Representation r;
  r.alg = alg;
  std::vector<bool> seen(q.arrows.size(), false);
  r.arrows.assign(q.arrows.size(), Matrix(alg->field(), 0, 0));
  for (std::size_t li = 1; li < lines.size(); ++li) {
    detail::LineCursor c{lines[li].second, 0, lines[li].first};
    std::string key = c.ident("directive");
    if (key == "dims") {
      if (!r.dims.empty()) throw ParseError("duplicate dims line", c.line);
      while (!c.at_end()) {
        std::uint64_t d = c.integer("dimension");
        if (d > 4096) throw ParseError("dimension too large", c.line);
        r.dims.push_back(std::size_t(d));
      }
      if (r.dims.size() != q.vertices.size())
        throw ParseError("dims line must list one dimension per vertex", c.line);
    } else if (key == "arrow") {
      if (r.dims.empty()) throw ParseError("dims line must precede arrows", c.line);
      std::string name = c.ident("arrow name");
      if (!q.has_arrow(name))
        throw ParseError("unknown arrow '" + name + "'", c.line);
      std::size_t idx = q.arrow_index(name);
      if (seen[idx]) throw ParseError("duplicate arrow '" + name + "'", c.line);
      seen[idx] = true;
      std::size_t rows = r.dims[q.arrows[idx].target];
      std::size_t cols = r.dims[q.arrows[idx].source];
      Matrix m(alg->field(), rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          bool neg = c.match('-');
          std::uint64_t e = c.integer("matrix entry");
          std::uint32_t v = std::uint32_t(e % p);
          m.at(i, j) = neg ? (p - v) % p : v;
        }
      c.expect_end();
      r.arrows[idx] = std::move(m);
    } else {
      throw ParseError("unknown directive '" + key + "'", c.line);
    }
  }
  if (r.dims.empty()) throw ParseError("missing dims line");
  for (std::size_t a = 0; a < q.arrows.size(); ++a)
    if (!seen[a]) {
      std::size_t rows = r.dims[q.arrows[a].target];
      std::size_t cols = r.dims[q.arrows[a].source];
      if (rows * cols > 0)
        throw ParseError("missing arrow line for '" + q.arrows[a].name + "'");
      r.arrows[a] = Matrix(alg->field(), rows, cols);
    }
  validate_rep(r);
  return r;
}

/** Canonical explicit emission: dims, then each arrow with row-major
    entries, quiver order, one line per arrow. */
inline std::string emit_module(const Representation& r) {
  const Quiver& q = r.alg->quiver();
  std::ostringstream out;
  out << "module explicit\n";
  out << "dims";
  for (std::size_t d : r.dims) out << " " << d;
  out << "\n";
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    out << "arrow " << q.arrows[a].name;
    for (std::size_t i = 0; i < r.arrows[a].rows(); ++i)
      for (std::size_t j = 0; j < r.arrows[a].cols(); ++j)
        out << " " << r.arrows[a].at(i, j);
    out << "\n";
  }
  return out.str();
}

/** FNV-1a 64-bit hash, used to fingerprint canonical input text. */
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string digest_string(std::string_view canonical_text) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(canonical_text);
  std::string out = "fnv1a64:";
  for (int k = 15; k >= 0; --k) out += hex[(h >> (4 * k)) & 0xf];
  return out;
}

namespace detail {

inline std::vector<std::string> sorted_brick_labels(const STNode& n) {
  std::vector<std::string> bricks;
  for (const auto& b : n.bricks.bricks) bricks.push_back(label_module(b));
  std::sort(bricks.begin(), bricks.end());
  return bricks;
}

}  // namespace detail

/** Machine-readable enumeration output.  Node ids are the poset's canonical
    ids, so two runs over the same input serialize byte-identically. */
inline nlohmann::ordered_json result_document(const STPoset& poset,
                                              const std::string& input_digest) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["input_digest"] = input_digest;
  doc["field"] = poset.alg->field().p;
  doc["counts"] = {{"nodes", poset.nodes.size()}, {"edges", poset.edges.size()}};
  doc["nodes"] = nlohmann::ordered_json::array();
  const auto& names = poset.alg->quiver().vertices;
  for (std::size_t id = 0; id < poset.nodes.size(); ++id) {
    const STNode& n = poset.nodes[id];
    nlohmann::ordered_json jn;
    jn["id"] = id;
    jn["depth"] = n.depth;
    jn["summands"] = n.summand_labels;
    auto proj = nlohmann::ordered_json::array();
    for (std::size_t v : n.pair.proj_part) proj.push_back(names[v]);
    jn["projective_part"] = std::move(proj);
    jn["semibrick"] = detail::sorted_brick_labels(n);
    jn["sincere"] = n.sincere;
    doc["nodes"].push_back(std::move(jn));
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const STEdge& e : poset.edges)
    doc["edges"].push_back(nlohmann::ordered_json{
        {"from", e.from}, {"to", e.to}, {"mutated", e.mutated}});
  return doc;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/** DOT serialization of the Hasse quiver: one node per pair labeled with its
    summand words and semibrick, one directed edge per left mutation. */
inline std::string to_dot(const STPoset& poset) {
  std::ostringstream out;
  out << "digraph stau_poset {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box];\n";
  for (std::size_t id = 0; id < poset.nodes.size(); ++id) {
    const STNode& n = poset.nodes[id];
    std::vector<std::string> bricks = detail::sorted_brick_labels(n);
    std::string sb = "{";
    for (std::size_t k = 0; k < bricks.size(); ++k) {
      if (k) sb += ", ";
      sb += bricks[k];
    }
    sb += "}";
    out << "  n" << id << " [label=\"" << detail::dot_escape(n.label)
        << "\\n" << detail::dot_escape(sb) << "\"];\n";
  }
  for (const STEdge& e : poset.edges)
    out << "  n" << e.from << " -> n" << e.to << " [label=\""
        << detail::dot_escape(e.mutated) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace tautilt
