#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dotcheck.hpp"
#include "fixtures.hpp"
#include "tautilt/cli.hpp"

using namespace tautilt;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path data_dir() { return TAUTILT_DATA_DIR; }

struct CmdResult {
  int code = 0;
  std::string out;
  std::string err;
};

template <typename Fn>
CmdResult run(Fn&& fn) {
  std::ostringstream out, err;
  CmdResult r;
  r.code = fn(out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::size_t count_lines_starting(const std::string& text,
                                 const std::string& prefix) {
  std::size_t count = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (text.compare(pos, prefix.size(), prefix) == 0) ++count;
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  return count;
}

}  // namespace

TEST_CASE("enumerate prints the poset and writes both reports") {
  std::string a2 = read_file(data_dir() / "a2.alg");
  CliOptions opt;
  opt.json_path = "cli_enum_a2.json";
  opt.dot_path = "cli_enum_a2.dot";
  std::remove(opt.json_path.c_str());
  std::remove(opt.dot_path.c_str());

  CmdResult r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_enumerate(a2, opt, out, err);
  });
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK_THAT(r.out, ContainsSubstring("nodes 5\n"));
  CHECK_THAT(r.out, ContainsSubstring("edges 5\n"));
  CHECK_THAT(r.out, ContainsSubstring(
                        "node 0 depth 0 2/3+3| semibrick {2, 3} sincere\n"));
  CHECK_THAT(r.out, ContainsSubstring("node 3 depth 2 0|2,3 semibrick {}\n"));
  CHECK_THAT(r.out, ContainsSubstring("edge 0 -> 1 [3]\n"));
  CHECK(count_lines_starting(r.out, "node ") == 5);
  CHECK(count_lines_starting(r.out, "edge ") == 5);

  std::string json = read_file(opt.json_path);
  auto doc = nlohmann::json::parse(json);
  CHECK(doc["counts"]["nodes"] == 5);
  CHECK(doc["version"] == kToolVersion);
  std::string dot = read_file(opt.dot_path);
  CHECK(dotcheck::valid(dot));
}

TEST_CASE("enumerate suppresses partial reports at the cap") {
  std::string a2 = read_file(data_dir() / "a2.alg");
  CliOptions opt;
  opt.max_nodes = 3;
  opt.json_path = "cli_enum_capped.json";
  std::remove(opt.json_path.c_str());

  CmdResult r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_enumerate(a2, opt, out, err);
  });
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("error:"));
  CHECK_FALSE(std::filesystem::exists(opt.json_path));

  CliOptions dim_opt;
  dim_opt.dim_cap = 1;
  CmdResult rd = run([&](std::ostream& out, std::ostream& err) {
    return cmd_enumerate(a2, dim_opt, out, err);
  });
  CHECK(rd.code == 2);
}

TEST_CASE("tau command prints canonical labels") {
  std::string a2 = read_file(data_dir() / "a2.alg");
  std::string b = read_file(data_dir() / "b.alg");
  std::string s2 = read_file(data_dir() / "s2.mod");
  CliOptions opt;

  CmdResult r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_tau(a2, s2, opt, out, err);
  });
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");

  r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_tau(a2, "module P(2)\n", opt, out, err);
  });
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");

  r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_tau(b, s2, opt, out, err);
  });
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");
}

TEST_CASE("extend reproduces the bound quiver file byte for byte") {
  std::string a2 = read_file(data_dir() / "a2.alg");
  std::string s2 = read_file(data_dir() / "s2.mod");
  CliOptions opt;
  opt.vertex_name = "1";

  CmdResult r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_extend(a2, s2, opt, out, err);
  });
  CHECK(r.code == 0);
  CHECK(r.out == read_file(data_dir() / "b.alg"));
}

TEST_CASE("extend handles projective and zero modules") {
  std::string a2 = read_file(data_dir() / "a2.alg");
  CliOptions opt;
  opt.vertex_name = "1";

  CmdResult r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_extend(a2, "module P(2)\n", opt, out, err);
  });
  CHECK(r.code == 0);
  CHECK(r.out ==
        "field 2\nvertices 1 2 3\narrow alpha : 1 -> 2\narrow beta : 2 -> 3\n");

  CliOptions dflt;  // default vertex name "a"
  r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_extend(a2, "module 0\n", dflt, out, err);
  });
  CHECK(r.code == 0);
  CHECK(r.out == "field 2\nvertices a 2 3\narrow beta : 2 -> 3\n");
}

TEST_CASE("verify prints per-check rows and the counting line") {
  std::string a2 = read_file(data_dir() / "a2.alg");
  std::string s2 = read_file(data_dir() / "s2.mod");
  CliOptions opt;
  opt.vertex_name = "1";
  opt.json_path = "cli_verify_a2.json";
  std::remove(opt.json_path.c_str());

  CmdResult r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify(a2, s2, opt, out, err);
  });
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("counts: 12 >= 2*5\n"));
  CHECK_THAT(r.out, ContainsSubstring("result: pass\n"));
  CHECK_THAT(r.out, ContainsSubstring("node check result witness\n"));
  CHECK(count_lines_starting(r.out, "   ") == 25);  // 5 nodes x checks a..e
  CHECK(r.out.find("FAIL") == std::string::npos);

  auto doc = nlohmann::json::parse(read_file(opt.json_path));
  CHECK(doc["all_pass"] == true);
  CHECK(doc["rows"].size() == 25);
  CHECK(doc["counting"]["nodes_b"] == 12);
  CHECK(doc["counting"]["nodes_a"] == 5);

  CliOptions popt;
  popt.vertex_name = "1";
  r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_verify(a2, "module P(2)\n", popt, out, err);
  });
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("counts: 14 >= 2*5\n"));
}

TEST_CASE("input errors exit with code three") {
  CliOptions opt;
  CmdResult r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_enumerate("field 2\nvertices 1\nbogus\n", opt, out, err);
  });
  CHECK(r.code == 3);
  CHECK_THAT(r.err, ContainsSubstring("line 3"));

  r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_enumerate(
        "field 2\nvertices 1 2\narrow alpha : 1 -> 2\nrelation alpha\n", opt,
        out, err);
  });
  CHECK(r.code == 3);
  CHECK_THAT(r.err, ContainsSubstring("admissible"));

  std::string a2 = read_file(data_dir() / "a2.alg");
  r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_tau(a2, "module S(7)\n", opt, out, err);
  });
  CHECK(r.code == 3);

  CliOptions bad_field;
  bad_field.field_override = 6;
  r = run([&](std::ostream& out, std::ostream& err) {
    return cmd_enumerate(a2, bad_field, out, err);
  });
  CHECK(r.code == 3);
  CHECK_THAT(r.err, ContainsSubstring("prime"));
}

TEST_CASE("commands are deterministic across runs and thread counts") {
  std::string b = read_file(data_dir() / "b.alg");
  auto run_enum = [&](std::size_t threads) {
    CliOptions opt;
    opt.threads = threads;
    opt.json_path = "cli_det_" + std::to_string(threads) + ".json";
    opt.dot_path = "cli_det_" + std::to_string(threads) + ".dot";
    std::remove(opt.json_path.c_str());
    std::remove(opt.dot_path.c_str());
    CmdResult r = run([&](std::ostream& out, std::ostream& err) {
      return cmd_enumerate(b, opt, out, err);
    });
    REQUIRE(r.code == 0);
    return std::tuple(r.out, read_file(opt.json_path),
                      read_file(opt.dot_path));
  };
  auto first = run_enum(1);
  auto second = run_enum(1);
  auto threaded = run_enum(4);
  CHECK(std::get<0>(first) == std::get<0>(second));
  CHECK(std::get<0>(first) == std::get<0>(threaded));
  CHECK(std::get<1>(first) == std::get<1>(second));
  CHECK(std::get<1>(first) == std::get<1>(threaded));
  CHECK(std::get<2>(first) == std::get<2>(second));
  CHECK(std::get<2>(first) == std::get<2>(threaded));
}
