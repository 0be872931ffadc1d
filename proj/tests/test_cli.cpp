#include "util.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace zt;

#ifdef ZPLIE_PATH

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured; stderr is captured too when merge is set.
Run zplie(const std::string& args, bool merge = false, const std::string& env = "") {
  std::string cmd = std::string("cd ") + ZPL_DATA_DIR + " && " + env + " " + ZPLIE_PATH + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ZPL_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("golden outputs") {
    struct Golden {
      const char* args;
      const char* file;
    };
    const Golden cases[] = {
        {"decide L1_s1.json", "golden/decide_L1_s1.json"},
        {"exhaust L3_s0.json --level 2", "golden/exhaust_L3_s0_N2.json"},
        {"shss L2.json", "golden/shss_L2.json"},
        {"classify L0_explicit.json", "golden/classify_L0.json"},
        {"enum L3_s0.json", "golden/enum_L3_s0.json"},
        {"witness Lab_d3.json", "golden/witness_Lab_d3.json"},
        {"decide L2.json --text", "golden/decide_L2.txt"},
    };
    for (const Golden& g : cases) {
      Run r = zplie(g.args);
      CHECK_MESSAGE(r.code == 0, g.args);
      CHECK_MESSAGE(r.out == slurp(g.file), g.args);
    }
  }

  TEST_CASE("decide emits a certificate that re-validates") {
    Run r = zplie("decide L1_s1.json");
    REQUIRE(r.code == 0);
    Json j = parse_json_text(r.out);
    CHECK(j["sigma"] == "p");
    LieLattice L = parse_lattice_file(std::string(ZPL_DATA_DIR) + "/L1_s1.json");
    VirtualEndo e = endo_from_json(L, j["certificate"]);
    CHECK(e.index_log == 1);
    CHECK(simplicity(e).status == Verdict::Simple);
    CHECK(tag_from_json(L.ctx(), j["tag"]) == tag(Family::L1, 1));
    Json d = parse_json_text(zplie("decide L3_s0.json").out);
    CHECK(d["sigma"] == "p^2");
  }

  TEST_CASE("exhaust and shss verdicts") {
    Json e2 = parse_json_text(zplie("exhaust L3_s0.json --level 2 --jobs 3").out);
    CHECK(e2["covered"] == true);
    CHECK(e2.dump() == parse_json_text(slurp("golden/exhaust_L3_s0_N2.json")).dump());
    Json s = parse_json_text(zplie("shss L2.json").out);
    CHECK(s["shss"] == false);
    Json s4 = parse_json_text(zplie("shss L4_3.json").out);
    CHECK(s4["shss"] == true);
    CHECK(s4["s"] == 1);
  }

  TEST_CASE("JOBS only changes wall time") {
    std::string a = zplie("exhaust L2.json").out;
    std::string b = zplie("exhaust L2.json --jobs 4").out;
    Run c = zplie("exhaust L2.json", false, "JOBS=3");
    CHECK(c.code == 0);
    CHECK(a == b);
    CHECK(a == c.out);
  }

  TEST_CASE("enum modules re-parse") {
    Json j = parse_json_text(zplie("enum L3_s0.json").out);
    CHECK(j["count"] == 13);
    CHECK(j["subalgebras"] == 4);
    for (const Json& s : j["shapes"]) {
      Mat g = matrix_from_json(s["module"]["gens"]);
      CHECK(index_log(PContext(3), hnf(PContext(3), g)) == 1);
    }
  }

  TEST_CASE("verify exit codes") {
    Run ok = zplie("verify L1_s1.json --endo L1_s1_endo.json");
    CHECK(ok.code == 0);
    CHECK(parse_json_text(ok.out)["verdict"]["status"] == "simple");
    Run inc = zplie("verify abelian5.json --endo abelian5_endo.json");
    CHECK(inc.code == 3);
    CHECK(parse_json_text(inc.out)["verdict"]["status"] == "inconclusive");
    CHECK(zplie("verify L1_s1.json").code == 2);
  }

  TEST_CASE("validation failures exit with code 2") {
    struct Bad {
      const char* args;
      const char* error;
      const char* detail;
    };
    const Bad cases[] = {
        {"classify asymmetric.json", "antisymmetry-violation", "2,1"},
        {"classify jacobi.json", "jacobi-violation", "(0,1,2)"},
        {"classify broken.json", "parse-error", "line 3, column 11"},
        {"classify missing.json", "parse-error", "missing.json"},
        {"decide L4_3.json", "out-of-domain", "rank 3"},
        {"witness L3_s0.json", "shape-mismatch", "a_d"},
    };
    for (const Bad& b : cases) {
      Run r = zplie(b.args, true);
      CHECK_MESSAGE(r.code == 2, b.args);
      Json j = parse_json_text(r.out);
      CHECK_MESSAGE(j["error"] == b.error, b.args);
      CHECK_MESSAGE(j["message"].get<std::string>().find(b.detail) != std::string::npos, b.args);
    }
    CHECK(zplie("frobnicate L1_s1.json").code == 2);
    CHECK(zplie("exhaust L3_s0.json --level 0").code == 2);
    CHECK(zplie("").code == 2);
  }
}

#endif
