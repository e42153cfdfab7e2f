#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tautilt/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tautilt::InvalidInputError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"support tau-tilting workbench over bound quiver algebras"};
  app.require_subcommand(1);

  std::string algebra_path, module_path;
  tautilt::CliOptions opt;

  auto add_common = [&](CLI::App* cmd, bool needs_module) {
    cmd->add_option("algebra", algebra_path, "algebra file")->required();
    if (needs_module)
      cmd->add_option("module", module_path, "module file")->required();
    cmd->add_option("--field", opt.field_override,
                    "override the file's field order");
    cmd->add_option("--max-nodes", opt.max_nodes, "enumeration node cap");
    cmd->add_option("--dim-cap", opt.dim_cap, "summand dimension cap");
    cmd->add_option("--threads", opt.threads, "worker threads for mutation");
  };

  CLI::App* c_enum = app.add_subcommand(
      "enumerate", "enumerate the support tau-tilting poset");
  add_common(c_enum, false);
  c_enum->add_option("--json", opt.json_path, "write the JSON result here");
  c_enum->add_option("--dot", opt.dot_path, "write the DOT Hasse quiver here");

  CLI::App* c_tau =
      app.add_subcommand("tau", "print the translate of a module");
  add_common(c_tau, true);

  CLI::App* c_ext =
      app.add_subcommand("extend", "emit the one-point extension algebra");
  add_common(c_ext, true);
  c_ext->add_option("--vertex-name", opt.vertex_name,
                    "name for the new vertex");

  CLI::App* c_ver = app.add_subcommand(
      "verify", "check the one-point extension theorems on an instance");
  add_common(c_ver, true);
  c_ver->add_option("--vertex-name", opt.vertex_name,
                    "name for the new vertex");
  c_ver->add_option("--json", opt.json_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    std::string alg_text = read_file(algebra_path);
    if (app.got_subcommand(c_enum))
      return tautilt::cmd_enumerate(alg_text, opt, std::cout, std::cerr);
    std::string mod_text = read_file(module_path);
    if (app.got_subcommand(c_tau))
      return tautilt::cmd_tau(alg_text, mod_text, opt, std::cout, std::cerr);
    if (app.got_subcommand(c_ext))
      return tautilt::cmd_extend(alg_text, mod_text, opt, std::cout,
                                 std::cerr);
    return tautilt::cmd_verify(alg_text, mod_text, opt, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
