#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ambrose/runner.hpp"

namespace {

std::pair<std::string, double> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ambrose::GeometryError(ambrose::ErrorCode::ConfigError, "expected key=value, got '" + s + "'");
  }
  const std::string value = s.substr(eq + 1);
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0') {
    throw ambrose::GeometryError(ambrose::ErrorCode::ConfigError, "not a number in '" + s + "'");
  }
  return {s.substr(0, eq), v};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local homogeneity checks on closed-form geometries"};
  std::string config_path, scenario, fixture, out;
  std::vector<std::string> params, tols;
  int points = 0, kmax = 0;
  std::uint64_t seed = 42;
  bool list = false, serial = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--scenario", scenario, "singer | check-lh-triple | check-ls-triple | adapt | total-space | identities | selftest");
  app.add_option("--fixture", fixture, "fixture name");
  app.add_option("--param", params, "fixture parameter key=value")->take_all();
  app.add_option("--points", points, "number of quasi-random sample points");
  app.add_option("--seed", seed, "sampling seed");
  app.add_option("--tol", tols, "tolerance override name=value")->take_all();
  app.add_option("--kmax", kmax, "maximum tower depth");
  app.add_option("--out", out, "report path (stdout if omitted)");
  app.add_flag("--list", list, "list fixtures and scenarios");
  app.add_flag("--serial", serial, "disable OpenMP over points");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    std::cout << "fixtures:";
    for (const std::string& f : ambrose::fixture_catalog()) std::cout << ' ' << f;
    std::cout << "\nscenarios:";
    for (const std::string& s : ambrose::scenario_names()) std::cout << ' ' << s;
    std::cout << '\n';
    return 0;
  }

  if (const char* threads = std::getenv("AMBROSE_THREADS")) ambrose::set_thread_cap(std::atoi(threads));

  ambrose::RunConfig config;
  try {
    if (!config_path.empty()) config = ambrose::load_config(config_path);
    if (app.count("--scenario")) config.scenario = scenario;
    if (app.count("--fixture")) config.fixture = fixture;
    for (const std::string& p : params) config.params[split_assignment(p).first] = split_assignment(p).second;
    if (app.count("--points")) {
      config.points = points;
      config.explicit_points.clear();
    }
    if (app.count("--seed")) config.seed = seed;
    for (const std::string& t : tols) config.tol[split_assignment(t).first] = split_assignment(t).second;
    if (app.count("--kmax")) config.kmax = kmax;
    if (app.count("--out")) config.out = out;
  } catch (const ambrose::GeometryError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  if (serial) config.exec = ambrose::Exec::Serial;

  const ambrose::RunOutcome result = ambrose::execute(config);
  if (result.exit_code == 2) {
    std::cerr << result.message << '\n';
    return 2;
  }
  if (!result.message.empty()) std::cerr << result.message << '\n';
  if (config.out.empty()) {
    std::cout << result.json;
  } else {
    std::ofstream f(config.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << config.out << '\n';
      return 2;
    }
    f << result.json;
  }
  return result.exit_code;
}
