/* End-to-end tests for the qalg binary. argv[1] is the binary, argv[2] the
   fixtures directory; both run through a shell, so paths must be shell-safe. */

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

namespace {

std::string g_bin;
std::string g_fix;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& tail) {
  std::string cmd = g_bin + " " + tail + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  return r;
}

std::string ws(const std::string& tail, const std::string& file = "counterexample.json") {
  return tail + " --input " + g_fix + "/" + file + " --format json";
}

nlohmann::json jparse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("cli: bundled verification passes in both formats") {
  RunResult text = run("verify-54");
  REQUIRE(text.code == 0);
  CHECK(text.out.find("[ ok ]") != std::string::npos);
  CHECK(text.out.find("[fail]") == std::string::npos);
  CHECK(text.out.find("verdict: pass") != std::string::npos);

  RunResult js = run("verify-54 --format json");
  REQUIRE(js.code == 0);
  nlohmann::json rep = jparse(js.out);
  CHECK(rep.at("pass") == true);
  REQUIRE(rep.at("steps").size() == 10);
  for (const auto& step : rep.at("steps")) CHECK(step.at("pass") == true);
}

TEST_CASE("cli: algebra and module queries") {
  RunResult alg = run(ws("check-algebra ladder"));
  REQUIRE(alg.code == 0);
  nlohmann::json a = jparse(alg.out);
  CHECK(a.at("dim") == 6);
  CHECK(a.at("loewy") == 2);
  CHECK(a.at("basis").size() == 6);

  RunResult text = run("check-algebra ladder --input " + g_fix + "/counterexample.json");
  REQUIRE(text.code == 0);
  CHECK(text.out.find("dim 6") != std::string::npos);
  CHECK(text.out.find("loewy length 2") != std::string::npos);

  RunResult hom = run(ws("hom mid quo"));
  REQUIRE(hom.code == 0);
  CHECK(jparse(hom.out).at("dim") == 1);

  RunResult cls = run(ws("class-of-ses seq_inc seq_prj"));
  REQUIRE(cls.code == 0);
  nlohmann::json c = jparse(cls.out);
  CHECK(c.at("split") == false);
  CHECK(c.at("dim") == 1);

  RunResult ue = run(ws("univ-ext quo simples"));
  REQUIRE(ue.code == 0);
  nlohmann::json u = jparse(ue.out);
  CHECK(u.at("mults") == nlohmann::json({0, 0, 1}));
  CHECK(u.at("middle_dims") == nlohmann::json({0, 1, 2}));
}

TEST_CASE("cli: flatness, tensor and membership verdicts") {
  RunResult flat = run(ws("flat-check flat"));
  REQUIRE(flat.code == 0);
  nlohmann::json f = jparse(flat.out);
  CHECK(f.at("flat") == true);
  CHECK(f.at("top_mults") == nlohmann::json({1, 2, 1}));

  RunResult cut = run(ws("flat-check cut"));
  REQUIRE(cut.code == 1);
  nlohmann::json k = jparse(cut.out);
  CHECK(k.at("flat") == false);
  CHECK(k.at("witness_vertex") == "2");

  CHECK(run(ws("flat-check split")).code == 1);

  RunResult ten = run(ws("tensor flat simple1_lower"));
  REQUIRE(ten.code == 0);
  CHECK(jparse(ten.out).at("out").at("dims") == nlohmann::json({1, 0, 0}));

  RunResult mem = run(ws("ex-member mid simples --depth 2"));
  REQUIRE(mem.code == 0);
  nlohmann::json m = jparse(mem.out);
  CHECK(m.at("member") == true);
  CHECK(m.at("depth") == 2);
  CHECK(m.at("layers") == nlohmann::json({{2}, {1}, {2}}));

  CHECK(run(ws("simple-collection simples")).code == 0);
}

TEST_CASE("cli: functor and conjugacy verdicts") {
  RunResult ff = run(ws("ff-check flat"));
  REQUIRE(ff.code == 1);
  nlohmann::json r = jparse(ff.out);
  CHECK(r.at("status") == "hom-mismatch");
  CHECK(r.at("i") == "2");
  CHECK(r.at("j") == "3");

  RunResult conj = run(ws("conjugate collapse collapse_scaled"));
  REQUIRE(conj.code == 0);
  nlohmann::json c = jparse(conj.out);
  CHECK(c.at("status") == "yes");
  CHECK(c.at("witness").size() == 4);
}

TEST_CASE("cli: enumeration over a finite field is deterministic") {
  RunResult a = run(ws("ncdef nil point", "loop_f2.json"));
  REQUIRE(a.code == 0);
  nlohmann::json r = jparse(a.out);
  CHECK(r.at("raw") == 2);
  CHECK(r.at("param_dim") == 1);
  CHECK(r.at("gauge_dim") == 1);
  CHECK(r.at("n_orbits") == 2);
  long covered = 0;
  for (const auto& orb : r.at("orbits")) covered += orb.at("size").get<long>();
  CHECK(covered == 2);

  RunResult b = run(ws("ncdef nil point", "loop_f2.json"));
  CHECK(a.out == b.out);
}

TEST_CASE("cli: input and usage errors exit with code 2") {
  CHECK(run("no-such-command").code == 2);
  CHECK(run("hom mid quo").code == 2);
  CHECK(run("hom mid quo --input " + g_fix + "/missing.json").code == 2);
  CHECK(run(ws("hom mid no_such_module")).code == 2);
  CHECK(run(ws("ex-member mid simples")).code == 2);
  CHECK(run("--help").code == 0);

  std::string bad = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                    "/qalg_bad_input.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run("hom mid quo --input " + bad + " --format json").code == 2);
  std::remove(bad.c_str());
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  int keep = 1;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (!arg.empty() && arg[0] != '-' && g_bin.empty()) {
      g_bin = arg;
    } else if (!arg.empty() && arg[0] != '-' && g_fix.empty()) {
      g_fix = arg;
    } else {
      argv[keep++] = argv[i];
    }
  }
  ctx.applyCommandLine(keep, argv);
  if (g_bin.empty() && std::getenv("QALG_BIN")) g_bin = std::getenv("QALG_BIN");
  if (g_fix.empty() && std::getenv("QALG_FIXTURES")) g_fix = std::getenv("QALG_FIXTURES");
  if (g_bin.empty() || g_fix.empty()) {
    std::fprintf(stderr, "usage: test_cli <qalg-binary> <fixtures-dir>\n");
    return 2;
  }
  return ctx.run();
}
