#include "polaron/cli/runner.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "polaron/cli/series_io.hpp"
#include "polaron/constants.hpp"
#include "polaron/free_dynamics.hpp"
#include "polaron/non_markov.hpp"
#include "polaron/numerics/zakian.hpp"
#include "polaron/parallel.hpp"
#include "polaron/propagators.hpp"
#include "polaron/steady_state.hpp"

namespace polaron::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::pair<Command, const char*>, 8> kCommands{{
    {Command::Propagators, "propagators"},
    {Command::Msd, "msd"},
    {Command::DiffusionSweep, "diffusion-sweep"},
    {Command::Energy, "energy"},
    {Command::Squeezing, "squeezing"},
    {Command::NonMarkov, "non-markov"},
    {Command::JDistance, "j-distance"},
    {Command::Validate, "validate"},
}};

DerivedBath bath_for(const ScenarioConfig& cfg, int d, double eta, double omega) {
  CondensateParams cond = cfg.condensate;
  cond.dimension = d;
  ImpurityParams imp = cfg.impurity;
  imp.eta = eta;
  imp.trap_frequency = omega;
  return derive_bath(cond, imp);
}

Scenario scenario_for(const DerivedBath& bath, double omega) {
  Scenario s;
  s.model = SpectralModel::bec(bath);
  s.trap_frequency = omega;
  return s;
}

json derived_json(const DerivedBath& b) {
  json j;
  j["g_B"] = b.coupling;
  j["n0"] = b.density;
  j["Lambda"] = b.cutoff;
  j["tau"] = b.tau;
  j["tau_pow_d"] = b.tau_pow_d;
  j["tau_s_pow_d"] = b.tau_s_pow_d;
  j["alpha"] = b.alpha;
  j["beta"] = b.beta;
  j["eta_c"] = b.eta_critical;
  j["eta_max"] = b.dimension / std::sqrt(b.beta);
  j["healing_length"] = b.healing_length;
  j["sound_speed"] = b.sound_speed;
  j["omega0"] = b.omega0;
  j["x_zpf"] = b.x_zpf ? json(*b.x_zpf) : json(nullptr);
  return j;
}

json config_json(const ScenarioConfig& c) {
  auto grid = [](const GridSpec& g) {
    return json{{"min", g.min},
                {"max", g.max},
                {"count", g.count},
                {"spacing", g.spacing == Spacing::Log ? "log" : "linear"}};
  };
  json j;
  j["condensate"] = {{"boson_mass", c.condensate.boson_mass},
                     {"scattering_length", c.condensate.scattering_length},
                     {"linear_density", c.condensate.linear_density},
                     {"omega_perp", c.condensate.omega_perp},
                     {"omega_z", c.condensate.omega_z}};
  j["impurity"] = {{"mass", c.impurity.mass},
                   {"trap_frequency", c.impurity.trap_frequency},
                   {"eta", c.impurity.eta}};
  j["run"] = {{"dimensions", c.dimensions},
              {"temperature", c.temperature},
              {"ht_temperature", c.ht_temperature},
              {"t_grid", grid(c.t_grid)},
              {"eta_grid", grid(c.eta_grid)},
              {"T_grid", grid(c.temperature_grid)},
              {"gamma", c.ohmic_gamma()},
              {"rel_tol", c.rel_tol},
              {"x2_0", c.initial.x2_0},
              {"v2_0", c.initial.v2_0},
              {"horizon_periods", c.horizon_periods},
              {"output", c.output}};
  return j;
}

bool uses_trap(Command c) {
  return c == Command::Propagators || c == Command::Squeezing || c == Command::NonMarkov ||
         c == Command::JDistance || c == Command::Validate;
}

bool single_coupling(Command c) {
  return c != Command::DiffusionSweep && c != Command::NonMarkov;
}

struct DimensionRun {
  Table table;
  json extra = json::object();
  std::vector<std::string> warnings;
};

DimensionRun run_propagators(const ScenarioConfig& cfg, const DerivedBath& bath, double omega) {
  const auto grid = cfg.t_grid.values();
  const Scenario s = scenario_for(bath, omega);
  std::vector<PropagatorSamples> parts{propagators_zakian(s, grid)};
  if (!s.trapped()) parts.push_back(propagators_asymptotic_free(s, grid));
  std::vector<double> t, t0, g1, g2;
  std::vector<std::string> method;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.t.size(); ++i) {
      t.push_back(p.t[i]);
      t0.push_back(p.t[i] * bath.omega0);
      g1.push_back(p.g1[i]);
      g2.push_back(p.g2[i]);
      method.push_back(to_string(p.method));
    }
  }
  DimensionRun r;
  r.table = {{"t_s", t}, {"t_omega0", t0}, {"G1", g1}, {"G2", g2}, {"method", method}};
  r.extra["zakian_order"] = numerics::ZakianConstants::standard().order();
  if (s.trapped() && omega * grid.back() > kZakianPhaseLimit) {
    r.warnings.push_back("t_max exceeds the Zakian resolution limit Omega t ~ 15");
  }
  return r;
}

DimensionRun run_msd(const ScenarioConfig& cfg, const DerivedBath& bath) {
  const auto grid = cfg.t_grid.values();
  const auto series = msd_numeric(scenario_for(bath, 0.0), cfg.initial, grid, cfg.temperature,
                                  cfg.rel_tol);
  DimensionRun r;
  r.table = {{"t_s", series.t}, {"msd_m2", series.value}};
  const auto lt = superdiffusion_coefficient(bath, DiffusionRegime::LowTemperature, 0.0);
  r.extra["D_LT"] = lt.value;
  const double from = grid.back() / 10.0;
  const auto in_decade = std::count_if(grid.begin(), grid.end(), [&](double t) { return t >= from; });
  if (in_decade >= 2) {
    r.extra["loglog_slope_last_decade"] = loglog_slope(series.t, series.value, from);
  }
  return r;
}

DimensionRun run_diffusion(const ScenarioConfig& cfg, const DerivedBath& bath,
                           bool ht_satisfied) {
  const auto etas = cfg.eta_grid.values();
  std::vector<double> d_values;
  std::vector<std::string> regime;
  for (double eta : etas) {
    const DerivedBath b = bath_for(cfg, bath.dimension, eta, 0.0);
    d_values.push_back(
        superdiffusion_coefficient(b, DiffusionRegime::HighTemperature, cfg.ht_temperature).value);
    if (!(eta < b.eta_critical)) regime.emplace_back("beyond-frohlich");
    else regime.emplace_back(ht_satisfied ? "HT" : "HT-below-threshold");
  }
  DimensionRun r;
  r.table = {{"eta", etas}, {"D_m2_per_s2", d_values}, {"regime", regime}};
  const auto peak = ht_peak(bath, cfg.ht_temperature);
  r.extra["eta_max"] = peak.eta_max;
  r.extra["D_max"] = peak.d_max;
  return r;
}

DimensionRun run_energy(const ScenarioConfig& cfg, const DerivedBath& bath) {
  const auto grid = cfg.t_grid.values();
  const auto method = cfg.temperature == 0.0 ? EnergyMethod::ClosedT0 : EnergyMethod::Numeric;
  const Scenario s = scenario_for(bath, 0.0);
  const auto series = energy(s, cfg.initial, grid, cfg.temperature, method, cfg.rel_tol);
  DimensionRun r;
  r.table = {{"t_s", series.t}, {"E_J", series.value}};
  r.extra["method"] = series.method;
  if (cfg.temperature == 0.0) r.extra["E_steady"] = energy_steady_t0(s, cfg.initial);
  return r;
}

SteadyStateOptions steady_options(const ScenarioConfig& cfg) {
  SteadyStateOptions o;
  o.rel_tol = std::min(cfg.rel_tol, 1e-9);
  return o;
}

DimensionRun run_squeezing(const ScenarioConfig& cfg, const DerivedBath& bath, double omega) {
  const auto temps = cfg.temperature_grid.values();
  const auto points = squeezing_profile(scenario_for(bath, omega), temps, steady_options(cfg));
  std::vector<double> t, ts, dx, dp, ref;
  for (const auto& p : points) {
    t.push_back(p.temperature);
    ts.push_back(p.temperature_scaled);
    dx.push_back(p.dx_scaled);
    dp.push_back(p.dp_scaled);
    ref.push_back(p.equipartition_ref);
  }
  DimensionRun r;
  r.table = {{"T_K", t}, {"T_scaled", ts}, {"dx_scaled", dx}, {"dp_scaled", dp},
             {"equipartition_ref", ref}};
  return r;
}

DimensionRun run_non_markov(const ScenarioConfig& cfg, const DerivedBath& bath, double omega,
                            double lambda1) {
  std::vector<double> etas;
  for (double eta : cfg.eta_grid.values()) {
    if (eta < bath.eta_critical) etas.push_back(eta);
  }
  std::vector<double> n(etas.size());
  std::vector<char> lower(etas.size());
  const double period = 2.0 * std::numbers::pi / omega;
  parallel_for(etas.size(), [&](std::size_t i) {
    const DerivedBath b = bath_for(cfg, bath.dimension, etas[i], omega);
    const auto res = non_markovianity_measure(scenario_for(b, omega), cfg.temperature,
                                              cfg.horizon_periods * period);
    n[i] = res.measure / (b.impurity_mass * lambda1);
    lower[i] = res.lower_bound;
  });
  DimensionRun r;
  r.table = {{"eta", etas}, {"N_scaled", n}};
  r.extra["skipped_beyond_frohlich"] = cfg.eta_grid.values().size() - etas.size();
  r.extra["horizon_s"] = cfg.horizon_periods * period;
  r.extra["unit"] = "m_I * Lambda_1 (= g_B1 n01 m_I / hbar)";
  std::size_t bounds = 0;
  for (char c : lower) bounds += c ? 1 : 0;
  if (bounds > 0) {
    r.extra["lower_bound_points"] = bounds;
    r.warnings.push_back("horizon ends inside a negative stretch; N is a lower bound");
  }
  return r;
}

DimensionRun run_j_distance(const ScenarioConfig& cfg, const DerivedBath& bath, double omega) {
  const auto temps = cfg.temperature_grid.values();
  const Scenario s = scenario_for(bath, omega);
  const auto opts = steady_options(cfg);
  std::vector<double> ts(temps.size()), jd(temps.size());
  parallel_for(temps.size(), [&](std::size_t i) {
    ts[i] = constants().k_B * temps[i] / (constants().hbar * omega);
    jd[i] = j_distance(s, temps[i], cfg.ohmic_gamma(), opts);
  });
  DimensionRun r;
  r.table = {{"T_scaled", ts}, {"JD", jd}};
  r.extra["gamma"] = cfg.ohmic_gamma();
  return r;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands) {
    if (name == n) return c;
  }
  return std::nullopt;
}

const char* command_name(Command c) {
  for (const auto& [cmd, n] : kCommands) {
    if (cmd == c) return n;
  }
  return "?";
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& kv : kCommands) out.emplace_back(kv.second);
  return out;
}

RunResult run_scenario(Command cmd, const ScenarioConfig& cfg_in, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig cfg = cfg_in;
  if (opts.dimensions) cfg.dimensions = *opts.dimensions;
  if (opts.output) cfg.output = opts.output->string();
  if (opts.tolerance) {
    if (!(*opts.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
    cfg.rel_tol = *opts.tolerance;
  }
  const std::filesystem::path out_dir(cfg.output);
  std::filesystem::create_directories(out_dir);

  RunResult result;
  json manifest;
  manifest["command"] = command_name(cmd);
  manifest["inputs"] = config_json(cfg);
  manifest["constants"] = {{"hbar", constants().hbar},
                           {"k_B", constants().k_B},
                           {"bohr_radius", constants().bohr_radius}};

  const double omega = uses_trap(cmd) ? cfg.impurity.trap_frequency : 0.0;
  const double eta = cfg.impurity.eta;

  // The high-temperature condition compares against the largest cutoff over d = 1, 2, 3.
  std::vector<DerivedBath> all;
  for (int d = 1; d <= 3; ++d) all.push_back(bath_for(cfg, d, eta, omega));
  const double ht_temperature =
      cmd == Command::DiffusionSweep ? cfg.ht_temperature : cfg.temperature;
  const bool ht_ok = check_high_temperature(ht_temperature, all);
  manifest["high_temperature"] = {{"temperature", ht_temperature},
                                  {"threshold", high_temperature_threshold(all)},
                                  {"satisfied", ht_ok}};
  manifest["tolerances"] = {{"rel_tol", cfg.rel_tol},
                            {"zakian_order", numerics::ZakianConstants::standard().order()}};
  manifest["threads"] = thread_count();

  bool regime_warning = false;
  json dims = json::array();
  for (int d : cfg.dimensions) {
    const DerivedBath& bath = all.at(d - 1);
    const auto fro = check_frohlich(eta, bath.eta_critical);
    json dj;
    dj["dimension"] = d;
    dj["derived"] = derived_json(bath);
    dj["frohlich"] = {{"eta", eta},
                      {"eta_c", bath.eta_critical},
                      {"valid", fro.valid},
                      {"margin", fro.margin},
                      {"diagnostic", fro.diagnostic},
                      {"applies", single_coupling(cmd)}};

    std::vector<std::string> warnings;
    if (single_coupling(cmd) && !fro.valid) warnings.push_back("Froehlich bound exceeded: " + fro.diagnostic);
    if (cmd == Command::DiffusionSweep && !ht_ok) {
      std::ostringstream os;
      os << "high-temperature formula requested at T=" << ht_temperature
         << " K below the threshold " << high_temperature_threshold(all) << " K";
      warnings.push_back(os.str());
    }
    if ((cmd == Command::Squeezing || cmd == Command::NonMarkov || cmd == Command::JDistance) &&
        !(omega > 0.0)) {
      result.error = std::string(command_name(cmd)) + " requires impurity.trap_frequency > 0";
      result.exit_code = kExitNumericFailure;
    }
    if (!warnings.empty()) regime_warning = true;
    const bool skip = (!warnings.empty() && !opts.force_out_of_regime) || result.exit_code != kExitOk;
    dj["computed"] = !skip && cmd != Command::Validate;

    if (!skip && cmd != Command::Validate) {
      try {
        DimensionRun run;
        switch (cmd) {
          case Command::Propagators: run = run_propagators(cfg, bath, omega); break;
          case Command::Msd: run = run_msd(cfg, bath); break;
          case Command::DiffusionSweep: run = run_diffusion(cfg, bath, ht_ok); break;
          case Command::Energy: run = run_energy(cfg, bath); break;
          case Command::Squeezing: run = run_squeezing(cfg, bath, omega); break;
          case Command::NonMarkov: run = run_non_markov(cfg, bath, omega, all[0].cutoff); break;
          case Command::JDistance: run = run_j_distance(cfg, bath, omega); break;
          case Command::Validate: break;
        }
        const auto file = out_dir / (std::string(command_name(cmd)) + "_d" + std::to_string(d) + ".csv");
        write_table(run.table, file);
        result.files.push_back(file);
        dj["output"] = file.filename().string();
        dj["results"] = run.extra;
        warnings.insert(warnings.end(), run.warnings.begin(), run.warnings.end());
      } catch (const NumericalError& e) {
        result.error = e.what();
        result.exit_code = kExitNumericFailure;
        dj["error"] = e.what();
      }
    }
    if (cmd == Command::Validate && omega > 0.0) {
      dj["renormalization_margin"] = omega * omega - damping_kernel_at_zero(scenario_for(bath, omega).model);
    }
    dj["warnings"] = warnings;
    result.warnings.insert(result.warnings.end(), warnings.begin(), warnings.end());
    dims.push_back(dj);
  }
  manifest["dimensions"] = dims;

  if (result.exit_code == kExitOk && regime_warning) result.exit_code = kExitRegimeWarning;
  manifest["forced"] = opts.force_out_of_regime;
  manifest["exit_code"] = result.exit_code;
  if (!result.error.empty()) manifest["error"] = result.error;
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  result.manifest = out_dir / (std::string(command_name(cmd)) + "_manifest.json");
  std::ofstream mf(result.manifest, std::ios::binary | std::ios::trunc);
  mf << manifest.dump(2) << '\n';
  return result;
}

}  // namespace polaron::cli
