#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#ifndef LIECLASS_CLI_PATH
#error "LIECLASS_CLI_PATH must point at the CLI binary"
#endif

namespace {
struct Run {
  int rc = -1;
  std::string out;  // stdout and stderr interleaved
};

std::string quote(const std::string& s) {
  std::string r = "'";
  for (char c : s) r += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return r + "'";
}

Run run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::string cmd = quote(LIECLASS_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  if (!stdin_text.empty()) cmd = "printf '%s' " + quote(stdin_text) + " | " + cmd;
  cmd += " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string ix_json =
    R"({"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":2,"j":3,"k":1,"c":"1"},{"i":1,"j":3,"k":2,"c":"-1"}]})";
}  // namespace

TEST_CASE("golden text output") {
  auto r = run({"classify", "--json", ix_json});
  CHECK(r.rc == 0);
  CHECK(r.out == "A_{3,9} (Bianchi IX), selfdual: no, unimodular: yes\n");

  r = run({"classify", "--class", "A_{4,5}", "--param", "a=1/2", "--param", "b=2/3"});
  CHECK(r.rc == 0);
  CHECK(r.out == "A_{4,5} (Petrov P6a), a=1/2, b=2/3, selfdual: yes, unimodular: no\n");

  r = run({"validate", "--json", ix_json});
  CHECK(r.rc == 0);
  CHECK(r.out == "valid (A_{3,9})\n");

  r = run({"njnf", "--class", "A_{3,5}", "--param", "a=1/2"});
  CHECK(r.rc == 0);
  CHECK(r.out == "ideal: I\nrestricted adjoint: [[-1, 0], [0, -1/2]]\nNJNF: J1(1), J1(1/2)\n");

  r = run({"dual", "--class", "A_{4,8}"});
  CHECK(r.rc == 0);
  CHECK(r.out == "selfdual: yes (signed-permutation)\n"
                 "witness: [[-1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]]\n");
  CHECK(run({"dual", "--class", "A_{4,12}"}).out == "selfdual: no, chirality: L\n");

  r = run({"contract", "--class", "A_{3,9}", "--family", "iw:1"});
  CHECK(r.rc == 0);
  CHECK(r.out == "limit: A_{3,6} (Bianchi VII_0)\nimproper: no\n[e1, e2] = e3\n[e1, e3] = -e2\n");

  r = run({"contract", "--class", "A_{4,9}", "--family",
           R"([["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]])", "--path", "b=-1+t/2"});
  CHECK(r.rc == 0);
  CHECK(r.out == "limit: A_{4,8} (Petrov P1)\nimproper: no\n[e2, e3] = e1\n[e2, e4] = e2\n[e3, e4] = -e3\n");

  CHECK(run({"graph", "--dim", "3", "--atoms", "all"}).out == "II\nV\n");
  CHECK(run({"graph", "--dim", "4", "--space-dim", "unimodular"}).out == "1\n");
  CHECK(run({"graph", "--dim", "3", "--pair", "IX", "VII_0"}).out == "IX open, VII_0 closed\n");
}

TEST_CASE("irrational parameters print exactly, approximations on request") {
  const std::string six = R"({"dim":3,"brackets":[{"i":1,"j":3,"k":1,"c":"-1"},{"i":1,"j":3,"k":2,"c":"-1"},)"
                          R"({"i":2,"j":3,"k":1,"c":"-2"},{"i":2,"j":3,"k":2,"c":"-1"}]})";
  auto exact = run({"classify", "--json", six});
  CHECK(exact.rc == 0);
  CHECK(exact.out == "A_{3,5} (Bianchi VI_h), a=root(x^2 + 6*x + 1, -3/2, 0), selfdual: yes, unimodular: no\n");
  auto approx = run({"--approx", "classify", "--json", six});
  CHECK(approx.out.find("~ -0.171573") != std::string::npos);
}

TEST_CASE("stdin and file input") {
  auto r = run({"classify", "-"}, R"({"dim":2,"brackets":[{"i":1,"j":2,"k":1,"c":"1"}]})");
  CHECK(r.rc == 0);
  CHECK(r.out == "A_2, selfdual: yes, unimodular: no\n");
  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/lieclass_cli_ix.json";
  std::ofstream(path) << ix_json;
  CHECK(run({"classify", path}).out == "A_{3,9} (Bianchi IX), selfdual: no, unimodular: yes\n");
  std::remove(path.c_str());
}

TEST_CASE("JSON output re-parses with a stable schema") {
  auto r = run({"--format", "json", "classify", "--json", ix_json});
  REQUIRE(r.rc == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("class") == "A_{3,9}");
  CHECK(j.at("chirality") == "R");
  CHECK(j.at("selfdual") == false);
  CHECK(j.at("witness").is_null());
  CHECK(j.at("signature").at("killing_signature") == nlohmann::json::array({0, 3, 0}));

  auto c = nlohmann::json::parse(run({"--format", "json", "contract", "--class", "A_{3,9}", "--family", "iw:1"}).out);
  CHECK(c.at("classification").at("class") == "A_{3,6}");
  CHECK(c.at("family").at("kind") == "iw");
  CHECK(c.at("improper") == false);

  // the family verb writes input the other verbs accept
  auto fam = run({"family", "ii", "-n", "3"});
  REQUIRE(fam.rc == 0);
  CHECK(nlohmann::json::parse(fam.out).at("dim") == 3);
  CHECK(run({"classify", "-"}, fam.out).out == "A_{3,1} (Bianchi II), selfdual: no, unimodular: yes\n");

  auto d = nlohmann::json::parse(run({"--format", "json", "dual", "--class", "A_{4,8}"}).out);
  CHECK(d.at("method") == "signed-permutation");
  CHECK(d.at("witness").size() == 4);

  auto g = nlohmann::json::parse(run({"--format", "json", "graph", "--dim", "3"}).out);
  CHECK(g.at("nodes").size() == 11);
  CHECK(run({"--format", "dot", "graph", "--dim", "3"}).out.rfind("digraph K3 {", 0) == 0);
}

TEST_CASE("domain errors exit 1") {
  auto bad = run({"validate", "--json", R"({"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":1,"j":3,"k":1,"c":"1"}]})"});
  CHECK(bad.rc == 1);
  CHECK(bad.out == "invalid: 1 violation\n  jacobi at (1,2,3), residual -e3\n");
  CHECK(run({"classify", "--class", "nonsense"}).rc == 1);
  CHECK(run({"classify", "--json", R"({"dim":5,"brackets":[]})"}).rc == 1);
  CHECK(run({"classify", "--json", "{bad"}).rc == 1);
  CHECK(run({"classify", "/nonexistent/input.json"}).rc == 1);
  auto range = run({"classify", "--class", "A_{4,5}", "--param", "a=2", "--param", "b=1"});
  CHECK(range.rc == 1);
  CHECK(range.out == "error: A_{4,5}: b must be <= 1\n");
  CHECK(run({"njnf", "--json", ix_json}).rc == 1);
  auto pole = run({"contract", "--class", "A_{3,1}", "--family", R"([["t","0","0"],["0","1","0"],["0","0","1"]])"});
  CHECK(pole.rc == 1);
  CHECK(pole.out.find("limit does not exist") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).rc == 2);
  CHECK(run({"bogus"}).rc == 2);
  CHECK(run({"classify"}).rc == 2);
  CHECK(run({"classify", "--class", "IX", "--json", ix_json}).rc == 2);
  CHECK(run({"graph", "--dim", "5"}).rc == 2);
  CHECK(run({"--format", "xml", "classify", "--class", "IX"}).rc == 2);
  CHECK(run({"contract", "--class", "IX"}).rc == 2);
  CHECK(run({"--help"}).rc == 0);
}
