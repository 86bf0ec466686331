#include "polaron/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace polaron::cli {
namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string source) : tree_(tree), source_(std::move(source)) {}

  void check_known(const std::map<std::string, std::set<std::string>>& schema) const {
    for (const auto& [section, body] : tree_) {
      if (!body.data().empty()) throw ConfigError(source_ + ": key '" + section + "' outside any section");
      auto it = schema.find(section);
      if (it == schema.end()) fail(section, "", "unknown section");
      for (const auto& [key, value] : body) {
        if (!it->second.count(key)) fail(section, key, "unknown key");
      }
    }
  }

  void number(const char* section, const char* key, double& out) const {
    if (auto raw = get(section, key)) {
      const std::string s = trim(*raw);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        fail(section, key, "expected a finite number, got '" + s + "'");
      }
      out = v;
    }
  }

  void integer(const char* section, const char* key, int& out) const {
    if (auto raw = get(section, key)) {
      const std::string s = trim(*raw);
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        fail(section, key, "expected an integer, got '" + s + "'");
      }
      out = v;
    }
  }

  void text(const char* section, const char* key, std::string& out) const {
    if (auto raw = get(section, key)) out = trim(*raw);
  }

  void spacing(const char* section, const char* key, Spacing& out) const {
    if (auto raw = get(section, key)) {
      const std::string s = trim(*raw);
      if (s == "linear") out = Spacing::Linear;
      else if (s == "log") out = Spacing::Log;
      else fail(section, key, "expected 'linear' or 'log', got '" + s + "'");
    }
  }

  void dimensions(const char* section, const char* key, std::vector<int>& out) const {
    if (auto raw = get(section, key)) {
      std::vector<int> dims;
      std::stringstream ss(*raw);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item == "1" || item == "2" || item == "3") {
          const int d = item[0] - '0';
          if (std::find(dims.begin(), dims.end(), d) != dims.end()) {
            fail(section, key, "duplicate dimension " + item);
          }
          dims.push_back(d);
        } else {
          fail(section, key, "dimensions must be a comma list of 1, 2, 3; got '" + item + "'");
        }
      }
      if (dims.empty()) fail(section, key, "no dimensions given");
      std::sort(dims.begin(), dims.end());
      out = dims;
    }
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& msg) const {
    std::string where = source_ + ": [" + section + "]";
    if (!key.empty()) where += " " + key;
    throw ConfigError(where + ": " + msg);
  }

 private:
  std::optional<std::string> get(const char* section, const char* key) const {
    auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    auto v = sec->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return v->data();
  }

  const pt::ptree& tree_;
  std::string source_;
};

void validate(const ScenarioConfig& c, const Reader& r) {
  auto positive = [&](double v, const char* sec, const char* key) {
    if (!(v > 0.0)) r.fail(sec, key, "must be positive, got " + format(v));
  };
  auto non_negative = [&](double v, const char* sec, const char* key) {
    if (!(v >= 0.0)) r.fail(sec, key, "must be >= 0, got " + format(v));
  };
  positive(c.condensate.boson_mass, "condensate", "boson_mass");
  positive(c.condensate.scattering_length, "condensate", "scattering_length");
  positive(c.condensate.linear_density, "condensate", "linear_density");
  positive(c.condensate.omega_perp, "condensate", "omega_perp");
  positive(c.condensate.omega_z, "condensate", "omega_z");
  positive(c.impurity.mass, "impurity", "mass");
  non_negative(c.impurity.trap_frequency, "impurity", "trap_frequency");
  non_negative(c.impurity.eta, "impurity", "eta");
  non_negative(c.temperature, "run", "temperature");
  non_negative(c.ht_temperature, "run", "ht_temperature");
  non_negative(c.gamma, "run", "gamma");
  positive(c.rel_tol, "run", "rel_tol");
  non_negative(c.initial.x2_0, "run", "x2_0");
  non_negative(c.initial.v2_0, "run", "v2_0");
  if (c.horizon_periods < 1) r.fail("run", "horizon_periods", "must be >= 1");
  if (c.output.empty()) r.fail("run", "output", "must not be empty");

  auto grid = [&](const GridSpec& g, const char* prefix, bool allow_zero) {
    const std::string p(prefix);
    if (g.count < 1) r.fail("run", p + "_count", "must be >= 1");
    if (!(g.max >= g.min) || (g.count > 1 && !(g.max > g.min))) {
      r.fail("run", p + "_max", "must exceed " + p + "_min");
    }
    if (allow_zero ? !(g.min >= 0.0) : !(g.min > 0.0)) {
      r.fail("run", p + "_min", allow_zero ? "must be >= 0" : "must be positive");
    }
    if (g.spacing == Spacing::Log && !(g.min > 0.0)) {
      r.fail("run", p + "_min", "log spacing needs a positive minimum");
    }
  };
  grid(c.t_grid, "t", false);
  grid(c.eta_grid, "eta", true);
  grid(c.temperature_grid, "T", true);
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    v[i] = spacing == Spacing::Log ? min * std::pow(max / min, f) : min + (max - min) * f;
  }
  if (count > 1) v.back() = max;
  return v;
}

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream os;
    os << source << ":" << e.line() << ": " << e.message();
    throw ConfigError(os.str());
  }

  const Reader r(tree, source);
  r.check_known({
      {"condensate", {"boson_mass", "scattering_length", "linear_density", "omega_perp", "omega_z"}},
      {"impurity", {"mass", "trap_frequency", "eta"}},
      {"run",
       {"dimensions", "temperature", "ht_temperature", "t_min", "t_max", "t_count", "t_spacing",
        "eta_min", "eta_max", "eta_count", "eta_spacing", "T_min", "T_max", "T_count",
        "T_spacing", "gamma", "rel_tol", "x2_0", "v2_0", "horizon_periods", "output"}},
  });

  ScenarioConfig c;
  r.number("condensate", "boson_mass", c.condensate.boson_mass);
  r.number("condensate", "scattering_length", c.condensate.scattering_length);
  r.number("condensate", "linear_density", c.condensate.linear_density);
  r.number("condensate", "omega_perp", c.condensate.omega_perp);
  r.number("condensate", "omega_z", c.condensate.omega_z);
  r.number("impurity", "mass", c.impurity.mass);
  r.number("impurity", "trap_frequency", c.impurity.trap_frequency);
  r.number("impurity", "eta", c.impurity.eta);
  r.dimensions("run", "dimensions", c.dimensions);
  r.number("run", "temperature", c.temperature);
  r.number("run", "ht_temperature", c.ht_temperature);
  r.number("run", "t_min", c.t_grid.min);
  r.number("run", "t_max", c.t_grid.max);
  r.integer("run", "t_count", c.t_grid.count);
  r.spacing("run", "t_spacing", c.t_grid.spacing);
  r.number("run", "eta_min", c.eta_grid.min);
  r.number("run", "eta_max", c.eta_grid.max);
  r.integer("run", "eta_count", c.eta_grid.count);
  r.spacing("run", "eta_spacing", c.eta_grid.spacing);
  r.number("run", "T_min", c.temperature_grid.min);
  r.number("run", "T_max", c.temperature_grid.max);
  r.integer("run", "T_count", c.temperature_grid.count);
  r.spacing("run", "T_spacing", c.temperature_grid.spacing);
  r.number("run", "gamma", c.gamma);
  r.number("run", "rel_tol", c.rel_tol);
  r.number("run", "x2_0", c.initial.x2_0);
  r.number("run", "v2_0", c.initial.v2_0);
  r.integer("run", "horizon_periods", c.horizon_periods);
  r.text("run", "output", c.output);
  validate(c, r);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

void write_config(const ScenarioConfig& c, std::ostream& out) {
  auto spacing = [](Spacing s) { return s == Spacing::Log ? "log" : "linear"; };
  out << "[condensate]\n"
      << "boson_mass = " << format(c.condensate.boson_mass) << "\n"
      << "scattering_length = " << format(c.condensate.scattering_length) << "\n"
      << "linear_density = " << format(c.condensate.linear_density) << "\n"
      << "omega_perp = " << format(c.condensate.omega_perp) << "\n"
      << "omega_z = " << format(c.condensate.omega_z) << "\n\n"
      << "[impurity]\n"
      << "mass = " << format(c.impurity.mass) << "\n"
      << "trap_frequency = " << format(c.impurity.trap_frequency) << "\n"
      << "eta = " << format(c.impurity.eta) << "\n\n"
      << "[run]\n"
      << "dimensions = ";
  for (std::size_t i = 0; i < c.dimensions.size(); ++i) {
    out << (i ? "," : "") << c.dimensions[i];
  }
  out << "\n"
      << "temperature = " << format(c.temperature) << "\n"
      << "ht_temperature = " << format(c.ht_temperature) << "\n";
  auto grid = [&](const char* p, const GridSpec& g) {
    out << p << "_min = " << format(g.min) << "\n"
        << p << "_max = " << format(g.max) << "\n"
        << p << "_count = " << g.count << "\n"
        << p << "_spacing = " << spacing(g.spacing) << "\n";
  };
  grid("t", c.t_grid);
  grid("eta", c.eta_grid);
  grid("T", c.temperature_grid);
  out << "gamma = " << format(c.gamma) << "\n"
      << "rel_tol = " << format(c.rel_tol) << "\n"
      << "x2_0 = " << format(c.initial.x2_0) << "\n"
      << "v2_0 = " << format(c.initial.v2_0) << "\n"
      << "horizon_periods = " << c.horizon_periods << "\n"
      << "output = " << c.output << "\n";
}

}  // namespace polaron::cli
