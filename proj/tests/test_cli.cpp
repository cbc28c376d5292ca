#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "tutte/engine.hpp"
#include "tutte/matroid_json.hpp"

using namespace tutte;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI under test (path in $TUTTE_CLI) through the shell.
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const char* cli = std::getenv("TUTTE_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "TUTTE_CLI must point at the binary");
  const std::string cmd = std::string(cli) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    res.output.append(buf, got);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/tutte_cli_test_" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("rank command") {
  auto res = run_cli("rank --builtin U:2,4 -s 1,2,3");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "2\n");

  res = run_cli("rank --builtin U:2,4 -s ''");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "0\n");

  const std::string r36 = write_temp("r36.json", R"({"type":"R","r":3,"n":6})");
  res = run_cli("rank -m " + r36 + " -s 1,2,3");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "2\n");

  res = run_cli("rank --builtin U:2,4 -s 1,9");
  CHECK(res.exit_code == 2);

  res = run_cli("rank --builtin U:2,4 -s 1,2 --format json");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "{\"rank\":2}\n");
  std::remove(r36.c_str());
}

TEST_CASE("tutte command") {
  const std::string expected = "x1^2 + 2*x1 + y1^2 + 2*y1\n";
  for (const std::string method : {"sum", "dc", "closed"}) {
    const auto res = run_cli("tutte --builtin U:2,4 --method " + method);
    CAPTURE(method);
    CHECK(res.exit_code == 0);
    CHECK(res.output == expected);
  }

  auto res = run_cli("tutte --builtin R:3,6 --method sum");
  const auto dc = run_cli("tutte --builtin R:3,6 --method dc");
  CHECK(res.output == dc.output);
  CHECK(res.output == tutte_sum(Matroid::r_construction(3, 6)).canonical_text() + "\n");

  const std::string bases =
      write_temp("u12.json", R"({"type":"bases","n":2,"bases":[[1],[2]]})");
  res = run_cli("tutte -m " + bases + " --method closed");
  CHECK(res.exit_code == 2);
  res = run_cli("tutte -m " + bases + " --method sum");
  CHECK(res.output == "x1 + y1\n");
  std::remove(bases.c_str());
}

TEST_CASE("genus command") {
  auto res = run_cli("genus --builtin U:1,1 -g 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output ==
        tutte_genus(Matroid::uniform(1, 1), 2).canonical_text() + "\n");

  // Genus 1 must match the tutte subcommand byte for byte.
  res = run_cli("genus --builtin Q:3,6 -g 1");
  CHECK(res.output == run_cli("tutte --builtin Q:3,6").output);

  // The m2 = 4 inequality for S_12 costs 2^48 tuples; it must be refused.
  res = run_cli("genus --builtin S:3 -g 4", /*merge_stderr=*/true);
  CHECK(res.exit_code == 3);
  CHECK(res.output.find("2^48") != std::string::npos);

  res = run_cli("genus --builtin U:2,4 -g 2 --format json");
  CHECK(res.exit_code == 0);
  CHECK(res.output == tutte_genus(Matroid::uniform(2, 4), 2).to_json() + "\n");

  // The budget flag is live on both sides of the comparison.
  res = run_cli("genus --builtin U:2,4 -g 2 --budget-log2 7", true);
  CHECK(res.exit_code == 3);
  CHECK(res.output.find("2^8") != std::string::npos);
  res = run_cli("genus --builtin U:2,4 -g 2 --budget-log2 8");
  CHECK(res.exit_code == 0);
}

TEST_CASE("compare command") {
  auto res = run_cli("compare --builtin R:3,6 --builtin Q:3,6 -g 1");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "EQUAL\n");

  res = run_cli("compare --builtin R:3,6 --builtin Q:3,6 -g 2");
  CHECK(res.exit_code == 1);
  CHECK(res.output.substr(0, 7) == "DIFFER\n");
  CHECK(res.output.find("witness") != std::string::npos);

  res = run_cli("compare --builtin S:3 --builtin Sprime:3 -g 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "EQUAL\n");

  res = run_cli(
      "compare --builtin R:3,6 --builtin Q:3,6 -g 2 --format json");
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("\"verdict\":\"DIFFER\"") != std::string::npos);
  CHECK(res.output.find("\"coeffA\"") != std::string::npos);
}

TEST_CASE("verify and iso commands") {
  auto res = run_cli("verify --builtin S:3");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "pass\n");

  res = run_cli("iso --builtin R:3,6 --builtin Q:3,6");
  CHECK(res.exit_code == 1);
  CHECK(res.output == "NONISO after 720 permutations\n");

  const Matroid r = Matroid::r_construction(3, 6);
  const Matroid rel = r.relabeled(Permutation({4, 5, 6, 1, 2, 3}));
  const std::string relabeled = write_temp("rel.json", matroid_to_json(rel));
  res = run_cli("iso --builtin R:3,6 -m " + relabeled);
  CHECK(res.exit_code == 0);
  CHECK(res.output.substr(0, 4) == "ISO ");
  std::remove(relabeled.c_str());
}

TEST_CASE("specialize-check and mbounds commands") {
  auto res = run_cli("specialize-check --builtin U:1,2 -g 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "PASS\n");

  res = run_cli("specialize-check --builtin R:3,6 -g 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "PASS\n");

  res = run_cli("mbounds 3");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "m1=2 m2=4\n");

  res = run_cli("mbounds 6");
  CHECK(res.output == "m1=3 m2=6\n");

  res = run_cli("mbounds 3 --format json");
  CHECK(res.output == "{\"m1\":2,\"m2\":4}\n");

  res = run_cli("mbounds 2");
  CHECK(res.exit_code == 2);
}

TEST_CASE("usage and parse failures exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("rank --builtin NOPE:1 -s 1").exit_code == 2);
  CHECK(run_cli("rank -s 1").exit_code == 2);                       // no matroid
  CHECK(run_cli("tutte --builtin U:2,4 --method magic").exit_code == 2);
  CHECK(run_cli("genus --builtin U:2,4").exit_code == 2);           // missing -g
  CHECK(run_cli("compare --builtin U:2,4 -g 1").exit_code == 2);    // one matroid

  const std::string bad = write_temp("bad.json", "{oops");
  CHECK(run_cli("rank -m " + bad + " -s 1").exit_code == 2);
  std::remove(bad.c_str());

  const std::string broken = write_temp(
      "broken.json", R"({"type":"bases","n":3,"bases":[[1,2],[3]]})");
  const auto res = run_cli("verify -m " + broken, /*merge_stderr=*/true);
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("unequal cardinality") != std::string::npos);
  std::remove(broken.c_str());
}

TEST_CASE("stdout is byte-identical across thread counts") {
  const auto t1 = run_cli("genus --builtin R:3,7 -g 2 --threads 1");
  const auto t4 = run_cli("genus --builtin R:3,7 -g 2 --threads 4");
  CHECK(t1.exit_code == 0);
  CHECK(t4.exit_code == 0);
  CHECK(t1.output == t4.output);
}

TEST_CASE("matroid json round trip") {
  for (const auto& m :
       {Matroid::uniform(2, 4), Matroid::r_construction(3, 6),
        Matroid::s_prime_construction(3),
        Matroid::vector_matroid(3, {{1, 0, 2}, {0, 1, 1}})}) {
    const Matroid back = matroid_from_json(matroid_to_json(m));
    CHECK(back.rank_table() == m.rank_table());
  }
  // Minors serialize as explicit bases.
  const Matroid minor = Matroid::uniform(2, 4).contracted(4);
  CHECK(matroid_from_json(matroid_to_json(minor)).rank_table() ==
        minor.rank_table());

  CHECK_THROWS_AS(matroid_from_json("{}"), ParseError);
  CHECK_THROWS_AS(matroid_from_json(R"({"type":"moebius"})"), ParseError);
  CHECK_THROWS_AS(matroid_from_builtin("U:2"), ParseError);
  CHECK_THROWS_AS(matroid_from_builtin("W:1,2"), ParseError);
}
