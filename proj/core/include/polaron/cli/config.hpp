#pragma once

#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "polaron/error.hpp"
#include "polaron/free_dynamics.hpp"
#include "polaron/params.hpp"

namespace polaron::cli {

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class Spacing { Linear, Log };

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  Spacing spacing = Spacing::Linear;

  /// Strictly increasing sample points; count == 1 yields {min}.
  std::vector<double> values() const;
  bool operator==(const GridSpec&) const = default;
};

/// Run description. Files hold SI units only.
///
///   [condensate] boson_mass scattering_length linear_density omega_perp omega_z
///   [impurity]   mass trap_frequency eta
///   [run]        dimensions temperature ht_temperature
///                t_min t_max t_count t_spacing
///                eta_min eta_max eta_count eta_spacing
///                T_min T_max T_count T_spacing
///                gamma rel_tol x2_0 v2_0 horizon_periods output
struct ScenarioConfig {
  CondensateParams condensate = reference_condensate(1);
  ImpurityParams impurity = reference_impurity(1.0, 4.0 * std::numbers::pi * 500.0);
  std::vector<int> dimensions{1, 2, 3};
  double temperature = 0.0;        // [K] msd, energy, non-markov
  double ht_temperature = 1.5e-7;  // [K] diffusion-sweep
  GridSpec t_grid{1e-6, 2.5e-3, 120, Spacing::Log};
  GridSpec eta_grid{0.1, 25.0, 250, Spacing::Linear};
  GridSpec temperature_grid{1e-9, 1e-6, 40, Spacing::Log};
  double gamma = 0.0;  // Ohmic reference damping [1/s]; 0 means 10 Omega
  double rel_tol = 1e-9;
  InitialState initial{};
  int horizon_periods = 20;
  std::string output = "out";

  double ohmic_gamma() const { return gamma > 0.0 ? gamma : 10.0 * impurity.trap_frequency; }
  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig default_config();

/// Parses INI text; missing keys keep their defaults, unknown sections or
/// keys are rejected. Errors name the line (syntax) or the field (values).
ScenarioConfig parse_config(std::istream& in, const std::string& source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

/// Writes every field so that parse_config reproduces `cfg` exactly.
void write_config(const ScenarioConfig& cfg, std::ostream& out);

}  // namespace polaron::cli
