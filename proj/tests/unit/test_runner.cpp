#include "helpers.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "ambrose/runner.hpp"

using namespace ambrose;
using nlohmann::json;

namespace {

RunConfig config(const std::string& scenario, const std::string& fixture, int points = 4) {
  RunConfig c;
  c.scenario = scenario;
  c.fixture = fixture;
  c.points = points;
  return c;
}

struct Shell {
  int code;
  std::string out;
};

Shell shell(const std::string& args) {
  const char* cli = std::getenv("AMBROSE_CLI");
  REQUIRE(cli != nullptr);
  const std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  while (const std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(R"({"scenario": "singer", "fixture": "berger_sphere",
      "params": {"lambda": 1.5}, "tol": {"default": 1e-6}, "seed": 7, "kmax": 3,
      "points": [[0.1, 0.5, 0.2], [0.0, 0.9, -0.3]]})");
  CHECK(c.scenario == "singer");
  CHECK(c.params.at("lambda") == 1.5);
  CHECK(c.tol.at("default") == 1e-6);
  CHECK(c.seed == 7);
  CHECK(c.kmax == 3);
  CHECK(c.points == 2);
  CHECK(c.explicit_points[1][1] == 0.9);
  CHECK(parse_config(R"({"param": {"n": 3}, "tolerances": {"x": 1}, "points": 5})").points == 5);
  CHECK(fails_with([] { parse_config(R"({"scenari": "singer"})"); }, ErrorCode::ConfigError));
  CHECK(fails_with([] { parse_config(R"({"kmax": "four"})"); }, ErrorCode::ConfigError));
  CHECK(fails_with([] { parse_config("{not json"); }, ErrorCode::ConfigError));
  CHECK(fails_with([] { parse_config("[1, 2]"); }, ErrorCode::ConfigError));
  CHECK(fails_with([] { load_config("/nonexistent/config.json"); }, ErrorCode::ConfigError));
}

TEST_CASE("configuration errors exit with 2 and no report") {
  std::vector<RunConfig> bad;
  bad.push_back(config("teleport", "round_sphere2"));
  bad.push_back(config("singer", "moebius"));
  bad.push_back(config("singer", ""));
  RunConfig c = config("singer", "round_sphere2");
  c.kmax = 9;
  bad.push_back(c);
  c = config("singer", "round_sphere2");
  c.tol["default"] = -1.0;
  bad.push_back(c);
  c = config("singer", "round_sphere2");
  c.tol["no_such_residual"] = 1.0;
  bad.push_back(c);
  c = config("singer", "round_sphere2");
  c.params["radius"] = 0.0;
  bad.push_back(c);
  c = config("singer", "round_sphere2");
  c.explicit_points = {point({0.01, 0.0})};
  bad.push_back(c);
  bad.push_back(config("singer", "round_sphere2", 0));
  bad.push_back(config("total-space", "round_sphere2"));
  bad.push_back(config("check-lh-triple", "berger_sphere"));
  for (const RunConfig& b : bad) {
    CAPTURE(b.scenario);
    CAPTURE(b.fixture);
    const RunOutcome o = execute(b);
    CHECK(o.exit_code == 2);
    CHECK(o.json.empty());
    CHECK_FALSE(o.message.empty());
  }
}

TEST_CASE("passing, failing and numerically broken runs") {
  const RunOutcome ok = execute(config("singer", "hopf_monopole"));
  CHECK(ok.exit_code == 0);
  const json j = json::parse(ok.json);
  CHECK(j["pass"] == true);
  CHECK(j["singer_k"] == 0);
  CHECK(j["stabilizer_dims"] == json::array({2}));
  CHECK(j["params"]["charge"] == 1.0);
  CHECK(j["points"].size() == 4);
  CHECK_FALSE(j.contains("error"));

  RunConfig bumped = config("check-lh-triple", "hopf_monopole");
  bumped.params["bump"] = 0.5;
  const RunOutcome fail = execute(bumped);
  CHECK(fail.exit_code == 1);
  CHECK(json::parse(fail.json)["pass"] == false);

  RunConfig tiny = config("selftest", "round_sphere2");
  tiny.params["radius"] = 1e-200;
  const RunOutcome broken = execute(tiny);
  CHECK(broken.exit_code == 3);
  const json e = json::parse(broken.json);
  CHECK(e["pass"] == false);
  CHECK(e["error"].get<std::string>().find("DegenerateMetric") != std::string::npos);
  CHECK(e["points"].size() == 4);
}

TEST_CASE("tolerance overrides reach the report") {
  RunConfig c = config("check-lh-triple", "hopf_monopole");
  c.params["bump"] = 0.5;
  c.tol["nabla_alpha"] = 10.0;
  c.tol["nabla_F"] = 10.0;
  const RunOutcome o = execute(c);
  const json j = json::parse(o.json);
  CHECK(j["tolerances"]["nabla_alpha"] == 10.0);
  CHECK(j["tolerances"]["nabla_R"] == 1e-5);
  CHECK(o.exit_code == (j["residuals"]["nabla_alpha"].get<double>() < 10.0 &&
                                j["residuals"]["nabla_F"].get<double>() < 10.0 &&
                                j["residuals"]["nabla_T"].get<double>() < 1e-5
                            ? 0
                            : 1));
}

TEST_CASE("reports are byte-identical across runs and execution modes") {
  for (const char* s : {"singer", "total-space", "identities"}) {
    CAPTURE(s);
    RunConfig c = config(s, "su2_monopole", 3);
    const std::string a = execute(c).json;
    CHECK(a == execute(c).json);
    c.exec = Exec::Serial;
    CHECK(a == execute(c).json);
    c.seed = 43;
    CHECK(a != execute(c).json);
  }
}

TEST_CASE("JSON layout") {
  VerificationReport r;
  r.scenario = "s";
  r.fixture = "f";
  r.set("b", 0.1 + 0.2, 1.0);
  r.set("a", 1.0 / 3.0, 1.0);
  r.finalize();
  const std::string text = to_json(r);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.find("\"fixture\"") < text.find("\"scenario\""));
  CHECK(text.find("\"b\": 0.3\n") != std::string::npos);
  CHECK(text.find("0.333333333333") != std::string::npos);
  CHECK(text.find("0.3333333333333") == std::string::npos);
  CHECK(json::parse(text)["singer_k"].is_null());
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(0.0) == 0.0);
}

TEST_CASE("quasi-random sample points") {
  const Vec lo = point({0.0, -1.0}), hi = point({1.0, 1.0});
  const std::vector<Vec> a = sample_points(lo, hi, 0.1, 64, 5);
  CHECK(a == sample_points(lo, hi, 0.1, 64, 5));
  CHECK(a != sample_points(lo, hi, 0.1, 64, 6));
  double mean = 0.0;
  for (const Vec& p : a) {
    CHECK(p[0] >= 0.1);
    CHECK(p[0] <= 0.9);
    CHECK(p[1] >= -0.9);
    CHECK(p[1] <= 0.9);
    mean += p[1] / 64.0;
  }
  CHECK(std::abs(mean) < 0.1);
}

TEST_CASE("command line front end") {
  const Shell list = shell("--list");
  CHECK(list.code == 0);
  CHECK(list.out.find("hopf_monopole") != std::string::npos);
  CHECK(shell("--bogus").code == 2);
  CHECK(shell("--scenario singer --fixture round_sphere2 --param radius").code == 2);
  CHECK(shell("--scenario singer --fixture round_sphere2 --tol default=abc").code == 2);

  const Shell run = shell("--scenario singer --fixture round_sphere2 --points 3 --seed 9");
  CHECK(run.code == 0);
  CHECK(json::parse(run.out)["points"].size() == 3);
  const Shell bumped = shell("--scenario check-lh-triple --fixture hopf_monopole --param bump=0.5 --points 3");
  CHECK(bumped.code == 1);

  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "ambrose_runner_test";
  std::filesystem::create_directories(dir);
  const std::filesystem::path cfg = dir / "c.json", out = dir / "r.json";
  std::ofstream(cfg) << R"({"scenario": "selftest", "fixture": "berger_sphere", "points": 2, "params": {"lambda": 3}})";
  const Shell file_run = shell("--config " + cfg.string() + " --serial --out " + out.string());
  CHECK(file_run.code == 0);
  CHECK(file_run.out.empty());
  std::ifstream in(out);
  const json j = json::parse(in);
  CHECK(j["params"]["lambda"] == 3.0);
  CHECK(j["scenario"] == "selftest");
  CHECK(shell("--config " + cfg.string() + " --fixture nowhere").code == 2);
  std::filesystem::remove_all(dir);
}
