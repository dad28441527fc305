#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "testutil.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
};

/** Run the installed binary through the shell, merging stderr into stdout. */
CliResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") +
                    std::string(TORICVSIT_CLI_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return CliResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fan_arg(const std::string& name) {
  return "\"" + fixture_path(name + ".json") + "\"";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("primitives subcommand prints the combinatorial inventory") {
  CliResult r = run_cli("primitives " + fan_arg("p1p1"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "primitive collections (2):"));
  CHECK(contains(r.out, "  {0,1}"));
  CHECK(contains(r.out, "  {2,3}"));
  CHECK(contains(r.out, "state sets (7):"));
  CHECK(contains(r.out, "relation lattice basis (2):"));
  CHECK(contains(r.out, "  (1, 1, 0, 0)"));
  CHECK(contains(r.out, "  (0, 0, 1, 1)"));
}

TEST_CASE("ample subcommand reports the reduced cone and membership") {
  CliResult r = run_cli("ample " + fan_arg("blp2") +
                        " --base-cone 2 --divisor 7,2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "base cone: 2"));
  CHECK(contains(r.out, "free rays: 0 1"));
  CHECK(contains(r.out, "reduced ample inequalities (3):"));
  CHECK(contains(r.out, "  a0 - a1 > 0"));
  CHECK(contains(r.out, "divisor (7, 2) ample: yes"));

  CliResult no = run_cli("ample " + fan_arg("blp2") +
                         " --base-cone 2 --divisor 2,2");
  CHECK(no.code == 0);
  CHECK(contains(no.out, "ample: no"));

  // (5,1,1,1) pairs with the relation lattice like (7,2,0,0) does, so it
  // reduces to the same class representative
  CliResult full = run_cli("ample " + fan_arg("blp2") +
                           " --base-cone 2 --divisor-full 5,1,1,1");
  CHECK(full.code == 0);
  CHECK(contains(full.out, "divisor (7, 2) ample: yes"));
}

TEST_CASE("base cone condition failure surfaces the offending ray") {
  CliResult r = run_cli("ample " + fan_arg("cube") + " --base-cone 0");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "error: base cone condition fails at ray 4"));
}

TEST_CASE("stratify prints strata in decreasing instability order") {
  std::string base = "stratify " + fan_arg("blp2") + " --base-cone 2";
  CliResult r = run_cli(base + " --divisor 7,2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "stratum 1: norm2 82/5"));
  CHECK(contains(r.out, "  lambda: (-12/5, 1/5, -12/5, -11/5)"));
  CHECK(contains(r.out, "  members: {} {1}"));
  CHECK(contains(r.out, "stratum 2: norm2 25/3"));
  CHECK(contains(r.out, "  members: {3} {1,3}"));
  CHECK(contains(r.out, "stratum 3: norm2 2"));
  CHECK(contains(r.out, "  members: {0} {2} {0,2}"));
  CHECK(contains(r.out, "stratum 4: semistable (e)"));

  CliResult dot = run_cli(base + " --divisor 7,2 --format dot");
  CHECK(dot.code == 0);
  CHECK(contains(dot.out, "digraph stratification"));
  CHECK(contains(dot.out, "n0 -> n1;"));
  CHECK(contains(dot.out, "label=\"e\""));

  CliResult js = run_cli(base + " --divisor 7,2 --format json");
  CHECK(js.code == 0);
  auto j = nlohmann::json::parse(js.out);
  REQUIRE(j["strata"].size() == 4);
  CHECK(j["strata"][0]["norm2"] == "82/5");
  CHECK(j["strata"][3]["semistable"] == true);
  CHECK(j["covers"].size() == 3);
}

TEST_CASE("stratify rejects non-ample divisors with a domain error") {
  CliResult r = run_cli("stratify " + fan_arg("blp2") +
                        " --base-cone 2 --divisor 0,0");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "error:"));
  CHECK(contains(r.out, "ample"));
}

TEST_CASE("compare classifies wall crossings between divisors") {
  std::string base = "compare " + fan_arg("blp2") + " --base-cone 2";
  CHECK(run_cli(base + " --divisor 7,2 --divisor2 7,3").out == "type_one\n");
  CHECK(run_cli(base + " --divisor 7,3 --divisor2 3,2").out == "type_two\n");
  CHECK(run_cli(base + " --divisor 3,2 --divisor2 6,5").out == "type_two\n");
  CHECK(run_cli(base + " --divisor 7,2 --divisor2 14,4").out ==
        "equivalent\n");
}

TEST_CASE("equiv reports ample equivalence and checks adjunction") {
  CliResult r = run_cli("equiv " + fan_arg("p2") + " --fan2 " +
                        fan_arg("p2_skew") + " --psi 0,1,2");
  CHECK(r.code == 0);
  CHECK(r.out == "amply equivalent: yes\n");

  CliResult adj = run_cli("equiv " + fan_arg("p2") + " --fan2 " +
                          fan_arg("p2_skew") +
                          " --psi 0,1,2 --divisor2 3,1,2");
  CHECK(adj.code == 0);
  CHECK(contains(adj.out, "amply equivalent: yes"));
  CHECK(contains(adj.out, "adjunction holds: yes"));

  CliResult no = run_cli("equiv " + fan_arg("p1p1") + " --fan2 " +
                         fan_arg("blp2") + " --psi 0,1,2,3");
  CHECK(no.code == 0);
  CHECK(no.out == "amply equivalent: no\n");
}

TEST_CASE("walls subcommand prints the atlas with witnesses") {
  CliResult r = run_cli("walls " + fan_arg("p1p1") + " --base-cone 3");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "type-one walls (0):"));
  CHECK(contains(r.out, "type-two walls (1):"));
  CHECK(contains(r.out, "  a0^2 - a2^2 = 0"));
  CHECK(contains(r.out, "    raw: -1/2*a0^2 + 1/2*a2^2"));
  CHECK(contains(r.out, "    pair: [{0} {1} {0,1}] vs [{2} {3} {2,3}]"));
  CHECK(contains(r.out, "signature slots: 1"));

  CliResult js = run_cli("walls " + fan_arg("blp2") +
                         " --base-cone 2 --format json");
  CHECK(js.code == 0);
  auto j = nlohmann::json::parse(js.out);
  REQUIRE(j["type_one"].size() == 1);
  CHECK(j["type_one"][0]["poly"] ==
        nlohmann::json::array({"1", "-3"}));
  CHECK(j["type_one"][0]["witnesses"][0]["rho"] == 1);
  REQUIRE(j["type_two"].size() == 3);
  CHECK(j["signature_slots"].size() == 4);
}

TEST_CASE("wall probe sampling is deterministic and seed-controlled") {
  std::string args = "walls " + fan_arg("blp2") +
                     " --base-cone 2 --probe 40";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "probe: 40 samples,"));

  // the default seed spelled out through the environment changes nothing
  CliResult c = run_cli(args, "TORIC_VSIT_SEED=659918");
  CHECK(c.out == a.out);
  CliResult d = run_cli(args, "TORIC_VSIT_SEED=7");
  CHECK(d.code == 0);
  CHECK(contains(d.out, "probe: 40 samples,"));
}

TEST_CASE("plot renders reproducible SVG and rejects other formats") {
  std::string args = "plot " + fan_arg("blp2") +
                     " --base-cone 2 --resolution 64";
  CliResult a = run_cli(args);
  CHECK(a.code == 0);
  CHECK(contains(a.out, "<svg xmlns"));
  CHECK(contains(a.out, "</svg>"));
  CliResult b = run_cli(args);
  CHECK(b.out == a.out);

  CHECK(run_cli("plot " + fan_arg("blp2") +
                " --base-cone 2 --format text").code == 2);
  CHECK(run_cli("plot " + fan_arg("blp2") +
                " --base-cone 2 --resolution 8").code == 2);
  CliResult rank1 = run_cli("plot " + fan_arg("p2"));
  CHECK(rank1.code == 1);
  CHECK(contains(rank1.out, "Picard rank 2 or 3"));
}

TEST_CASE("slice plots accept an explicit affine chart") {
  CliResult r = run_cli("plot " + fan_arg("blhirz") +
                        " --resolution 32 --slice 1,0,1=1");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "<svg xmlns"));
  CHECK(run_cli("plot " + fan_arg("blhirz") +
                " --resolution 32 --slice 1,0,1").code == 2);
  CHECK(run_cli("plot " + fan_arg("blhirz") +
                " --resolution 32 --slice 1,0,1=0").code == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CliResult missing = run_cli("ample /no/such/fan.json");
  CHECK(missing.code == 2);
  CHECK(contains(missing.out, "cannot open fan file"));

  CHECK(run_cli("stratify " + fan_arg("blp2") + " --base-cone 2").code == 2);
  CHECK(run_cli("stratify " + fan_arg("blp2") +
                " --base-cone 2 --divisor 1,2,3").code == 2);
  CHECK(run_cli("ample " + fan_arg("blp2") + " --format yaml").code == 2);
  CHECK(run_cli("frobnicate " + fan_arg("blp2")).code == 2);
  CHECK(run_cli("").code == 2);
}

TEST_CASE("malformed fan files exit with code 2") {
  std::string bad = testdata_path("bad_fan.json");
  {
    std::ofstream f(bad);
    f << "{\"rays\": [[1,0],[0,1]]}";
  }
  CliResult r = run_cli("primitives \"" + bad + "\"");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "error:"));
  std::remove(bad.c_str());
}
