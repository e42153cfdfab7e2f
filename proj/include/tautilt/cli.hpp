#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "tautilt/io.hpp"
#include "tautilt/opext.hpp"

namespace tautilt {

/** Knobs shared by the command entry points; mirrors the CLI flags. */
struct CliOptions {
  std::uint32_t field_override = 0;  // 0 keeps the file's field line
  std::size_t max_nodes = 10000;
  std::size_t dim_cap = 64;
  std::size_t threads = 1;
  std::string vertex_name = "a";
  std::string json_path;  // empty: no JSON file written
  std::string dot_path;   // empty: no DOT file written
};

namespace detail {

inline AlgebraPtr build_algebra(AlgebraFile& f, const CliOptions& opt) {
  if (opt.field_override) f.p = opt.field_override;
  return f.build();
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot open output file: " + path);
  out << bytes;
  out.flush();
  if (!out) throw InvalidInputError("cannot write output file: " + path);
}

/** Maps the error taxonomy onto exit codes: 2 for resource caps, 3 for any
    other input or computation failure; the body returns 0 or 1 itself. */
template <typename Fn>
inline int run_command(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

inline std::string brick_set_string(const STNode& n) {
  std::vector<std::string> bricks = sorted_brick_labels(n);
  std::string out = "{";
  for (std::size_t k = 0; k < bricks.size(); ++k) {
    if (k) out += ", ";
    out += bricks[k];
  }
  return out + "}";
}

}  // namespace detail

/** Enumerates the support tau-tilting poset of the algebra file and prints a
    node/edge listing; optional JSON and DOT files are written only when the
    whole enumeration finished, so capped runs leave no partial report. */
inline int cmd_enumerate(const std::string& algebra_text, const CliOptions& opt,
                         std::ostream& out, std::ostream& err) {
  return detail::run_command(err, [&]() -> int {
    AlgebraFile f = parse_algebra(algebra_text);
    AlgebraPtr alg = detail::build_algebra(f, opt);
    EnumerateOptions eo{opt.max_nodes, opt.dim_cap, opt.threads};
    STPoset poset = enumerate_stau(alg, eo);
    std::string digest = digest_string(emit_algebra(f));
    std::string json = result_document(poset, digest).dump(2) + "\n";
    std::string dot = to_dot(poset);
    if (!opt.json_path.empty()) detail::write_file(opt.json_path, json);
    if (!opt.dot_path.empty()) detail::write_file(opt.dot_path, dot);
    out << "nodes " << poset.nodes.size() << "\n";
    out << "edges " << poset.edges.size() << "\n";
    for (std::size_t id = 0; id < poset.nodes.size(); ++id) {
      const STNode& n = poset.nodes[id];
      out << "node " << id << " depth " << n.depth << " " << n.label
          << " semibrick " << detail::brick_set_string(n)
          << (n.sincere ? " sincere" : "") << "\n";
    }
    for (const STEdge& e : poset.edges)
      out << "edge " << e.from << " -> " << e.to << " [" << e.mutated << "]\n";
    return 0;
  });
}

/** Prints the canonical label of the translate of the module: the Loewy word
    when uniserial, the dimension vector otherwise, "0" for zero. */
inline int cmd_tau(const std::string& algebra_text,
                   const std::string& module_text, const CliOptions& opt,
                   std::ostream& out, std::ostream& err) {
  return detail::run_command(err, [&]() -> int {
    AlgebraFile f = parse_algebra(algebra_text);
    AlgebraPtr alg = detail::build_algebra(f, opt);
    Representation m = parse_module(module_text, alg);
    out << label_module(tau(m).module) << "\n";
    return 0;
  });
}

/** Emits the one-point extension of the algebra by the module as a canonical
    algebra file on stdout. */
inline int cmd_extend(const std::string& algebra_text,
                      const std::string& module_text, const CliOptions& opt,
                      std::ostream& out, std::ostream& err) {
  return detail::run_command(err, [&]() -> int {
    AlgebraFile f = parse_algebra(algebra_text);
    AlgebraPtr alg = detail::build_algebra(f, opt);
    Representation x = parse_module(module_text, alg);
    ExtensionOptions xo;
    xo.vertex_name = opt.vertex_name;
    ExtensionResult ext = extend(alg, x, xo);
    out << emit_algebra(algebra_file_of(ext.B));
    return 0;
  });
}

/** Runs the extension checks over every node of the base poset and prints
    one row per (node, check) plus the poset-size counting line; exit 0 only
    when every row and the counting inequality pass. */
inline int cmd_verify(const std::string& algebra_text,
                      const std::string& module_text, const CliOptions& opt,
                      std::ostream& out, std::ostream& err) {
  return detail::run_command(err, [&]() -> int {
    AlgebraFile f = parse_algebra(algebra_text);
    AlgebraPtr alg = detail::build_algebra(f, opt);
    Representation x = parse_module(module_text, alg);
    VerifyOptions vo;
    vo.enumerate = EnumerateOptions{opt.max_nodes, opt.dim_cap, opt.threads};
    vo.vertex_name = opt.vertex_name;
    VerificationReport report = verify_extension_theorems(alg, x, vo);

    out << "node check result witness\n";
    for (const VerificationRow& r : report.rows) {
      const char* res = r.applicable ? (r.pass ? "pass" : "FAIL") : "n/a";
      out << std::setw(4) << r.node << " " << r.check << "     " << res;
      if (!r.witness.empty()) out << " " << r.witness;
      out << "\n";
    }
    std::size_t nb = report.poset_b.nodes.size();
    std::size_t na = report.poset_a.nodes.size();
    out << "counts: " << nb << (report.counting_pass ? " >= " : " < ") << "2*"
        << na << "\n";
    out << "result: " << (report.all_pass() ? "pass" : "FAIL") << "\n";

    if (!opt.json_path.empty()) {
      nlohmann::ordered_json doc;
      doc["tool"] = kToolName;
      doc["version"] = kToolVersion;
      doc["input_digest"] = digest_string(emit_algebra(f));
      doc["vertex"] = opt.vertex_name;
      doc["rows"] = nlohmann::ordered_json::array();
      for (const VerificationRow& r : report.rows)
        doc["rows"].push_back(nlohmann::ordered_json{
            {"node", r.node},
            {"check", std::string(1, r.check)},
            {"applicable", r.applicable},
            {"pass", r.pass},
            {"witness", r.witness}});
      doc["counting"] = {{"nodes_b", nb},
                         {"nodes_a", na},
                         {"pass", report.counting_pass}};
      doc["all_pass"] = report.all_pass();
      detail::write_file(opt.json_path, doc.dump(2) + "\n");
    }
    return report.all_pass() ? 0 : 1;
  });
}

}  // namespace tautilt
