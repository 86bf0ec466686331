#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polaron/cli/config.hpp"
#include "polaron/cli/runner.hpp"
#include "polaron/cli/series_io.hpp"

using namespace polaron;
using namespace polaron::cli;
namespace fs = std::filesystem;

namespace {

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.ini");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / "polaron_cli_tests" / name;
  fs::remove_all(p);
  return p;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("empty config yields the defaults") {
    const auto c = parse("");
    CHECK(c == default_config());
    CHECK(c.impurity.eta == 1.0);
    CHECK(c.impurity.trap_frequency == doctest::Approx(4.0 * std::numbers::pi * 500.0));
    CHECK(c.dimensions == std::vector<int>{1, 2, 3});
    CHECK(c.ohmic_gamma() == doctest::Approx(10.0 * c.impurity.trap_frequency));
  }

  TEST_CASE("overrides are applied") {
    const auto c = parse("[impurity]\neta = 2.5\n[run]\ndimensions = 3,1\nt_count = 7\nt_spacing = linear\n");
    CHECK(c.impurity.eta == 2.5);
    CHECK(c.dimensions == std::vector<int>{1, 3});
    CHECK(c.t_grid.count == 7);
    CHECK(c.t_grid.spacing == Spacing::Linear);
  }

  TEST_CASE("unknown keys and sections are rejected with the field name") {
    try {
      parse("[impurity]\nmas = 1e-25\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("[impurity] mas") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("[bath]\nx = 1\n"), ConfigError);
  }

  TEST_CASE("non-physical values are rejected") {
    try {
      parse("[impurity]\nmass = -1e-25\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("[impurity] mass") != std::string::npos);
      CHECK(msg.find("positive") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("[run]\nt_min = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("[run]\ndimensions = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse("[run]\nrel_tol = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse("[run]\ntemperature = nan\n"), ConfigError);
    CHECK_THROWS_AS(parse("[run\n"), ConfigError);
  }

  TEST_CASE("config round-trips exactly") {
    auto c = default_config();
    c.impurity.eta = 0.1 + 0.2;
    c.temperature = 1.0 / 3.0 * 1e-7;
    c.dimensions = {2};
    c.initial.v2_0 = 1e-6;
    c.output = "elsewhere";
    std::ostringstream os;
    write_config(c, os);
    CHECK(parse(os.str()) == c);
  }

  TEST_CASE("grids") {
    const GridSpec lin{0.0, 1.0, 5, Spacing::Linear};
    CHECK(lin.values() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    const GridSpec lg{1e-3, 1.0, 4, Spacing::Log};
    const auto v = lg.values();
    REQUIRE(v.size() == 4);
    CHECK(v.front() == 1e-3);
    CHECK(v.back() == 1.0);
    CHECK(v[1] == doctest::Approx(1e-2));
    CHECK(GridSpec{2.0, 3.0, 1, Spacing::Linear}.values() == std::vector<double>{2.0});
  }

  TEST_CASE("series writer: header plus one line per point, byte-stable") {
    const auto dir = scratch("series");
    fs::create_directories(dir);
    SeriesOutput s{{1e-6, 2e-6, 3e-6}, {0.1, 0.2, 1.0 / 3.0}, "m^2", "quadrature"};
    write_series(s, dir / "a.csv", "t_s", "msd_m2");
    write_series(s, dir / "b.csv", "t_s", "msd_m2");
    const auto a = slurp(dir / "a.csv");
    CHECK(count_lines(a) == 4);
    CHECK(a.rfind("t_s,msd_m2\n", 0) == 0);
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  }

  TEST_CASE("writer refuses non-finite values and ragged tables") {
    std::ostringstream os;
    Table nan_table{{"x", std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}}};
    CHECK_THROWS(write_table(nan_table, os));
    Table ragged{{"x", std::vector<double>{1.0, 2.0}}, {"y", std::vector<double>{1.0}}};
    CHECK_THROWS(write_table(ragged, os));
  }

  TEST_CASE("commands parse by name") {
    CHECK(parse_command("diffusion-sweep") == Command::DiffusionSweep);
    CHECK(parse_command("j-distance") == Command::JDistance);
    CHECK_FALSE(parse_command("bogus").has_value());
    CHECK(command_names().size() == 8);
  }

  TEST_CASE("runner exit codes") {
    auto c = default_config();
    c.dimensions = {2};
    c.t_grid = {1e-5, 1e-4, 3, Spacing::Log};
    c.eta_grid = {0.5, 5.0, 4, Spacing::Linear};

    RunOptions ok;
    ok.output = scratch("ok");
    const auto r0 = run_scenario(Command::Msd, c, ok);
    CHECK(r0.exit_code == kExitOk);
    REQUIRE(r0.files.size() == 1);
    CHECK(count_lines(slurp(r0.files[0])) == 4);
    const auto manifest = nlohmann::json::parse(slurp(r0.manifest));
    CHECK(manifest["exit_code"] == 0);

    // Coupling beyond the Froehlich bound: skipped with exit code 2.
    auto strong = c;
    strong.impurity.eta = 20.0;
    RunOptions warn;
    warn.output = scratch("warn");
    const auto r2 = run_scenario(Command::Msd, strong, warn);
    CHECK(r2.exit_code == kExitRegimeWarning);
    CHECK(r2.files.empty());
    CHECK_FALSE(r2.warnings.empty());

    // Forced: computed, exit code still 2.
    warn.force_out_of_regime = true;
    warn.output = scratch("forced");
    const auto r2f = run_scenario(Command::Msd, strong, warn);
    CHECK(r2f.exit_code == kExitRegimeWarning);
    CHECK(r2f.files.size() == 1);

    // High-temperature sweep below its threshold.
    auto cold = c;
    cold.ht_temperature = 1.5e-7;
    RunOptions sweep;
    sweep.output = scratch("sweep");
    CHECK(run_scenario(Command::DiffusionSweep, cold, sweep).exit_code == kExitRegimeWarning);
    cold.ht_temperature = 1e-6;
    sweep.output = scratch("sweep_ok");
    CHECK(run_scenario(Command::DiffusionSweep, cold, sweep).exit_code == kExitOk);
  }
}
