#include <iostream>

#include <CLI11.hpp>

#include "polaron/cli/config.hpp"
#include "polaron/cli/runner.hpp"
#include "polaron/parallel.hpp"

namespace {

std::vector<int> parse_dims(const std::string& s) {
  if (s == "all") return {1, 2, 3};
  if (s == "1" || s == "2" || s == "3") return {s[0] - '0'};
  throw CLI::ValidationError("--dim", "expected 1, 2, 3 or all");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Impurity in a d-dimensional Bose-Einstein condensate: open-system dynamics"};

  std::string command;
  std::string config_path;
  std::string dim;
  std::string out_dir;
  double tolerance = 0.0;
  bool force = false;
  bool dump_config = false;

  app.add_option("command", command, "propagators | msd | diffusion-sweep | energy | squeezing | "
                                     "non-markov | j-distance | validate");
  app.add_option("--config", config_path, "INI config file (built-in defaults when omitted)")
      ->check(CLI::ExistingFile);
  app.add_option("--dim", dim, "1, 2, 3 or all")->check(CLI::IsMember({"1", "2", "3", "all"}));
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--tolerance", tolerance, "relative quadrature tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--force-out-of-regime", force,
               "compute even when the Froehlich or high-temperature check fails (exit code stays 2)");
  app.add_flag("--print-config", dump_config, "print the effective config and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    polaron::set_thread_count(polaron::thread_count_from_env());
    const auto cfg = config_path.empty() ? polaron::cli::default_config()
                                         : polaron::cli::load_config(config_path);
    if (dump_config) {
      polaron::cli::write_config(cfg, std::cout);
      return 0;
    }
    const auto cmd = polaron::cli::parse_command(command);
    if (!cmd) {
      std::cerr << "unknown command '" << command << "'; expected one of:";
      for (const auto& n : polaron::cli::command_names()) std::cerr << ' ' << n;
      std::cerr << '\n';
      return 1;
    }

    polaron::cli::RunOptions opts;
    if (!dim.empty()) opts.dimensions = parse_dims(dim);
    if (!out_dir.empty()) opts.output = out_dir;
    if (tolerance > 0.0) opts.tolerance = tolerance;
    opts.force_out_of_regime = force;

    const auto result = polaron::cli::run_scenario(*cmd, cfg, opts);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    if (!result.error.empty()) std::cerr << "error: " << result.error << '\n';
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    std::cout << result.manifest.string() << '\n';
    return result.exit_code;
  } catch (const polaron::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
