// aoisim: simulate, evaluate closed forms, sweep, and cross-validate.
//
// Exit codes: 0 ok, 2 configuration / domain error, 3 validation failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "aoisim/cli/analytic_table.hpp"
#include "aoisim/cli/config.hpp"
#include "aoisim/cli/csv.hpp"
#include "aoisim/cli/sweep.hpp"
#include "aoisim/cli/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kValidationFailed = 3;

// Writes to `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw aoisim::ConfigError("out", "cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace aoisim;
  CLI::App app{"Age-of-information simulator and closed-form evaluator"};
  app.require_subcommand(1);

  std::string config_path, out_path;

  auto* simulate = app.add_subcommand("simulate", "run one configuration, one CSV row per source");
  simulate->add_option("--config", config_path, "JSON run description")->required();
  simulate->add_option("--out", out_path, "CSV output file (default stdout)");

  double lambda = 0.0, mu = 0.0;
  std::string model = "all";
  auto* analytic = app.add_subcommand("analytic", "print every closed-form quantity");
  analytic->add_option("--lambda", lambda, "arrival probability per slot")->required();
  analytic->add_option("--mu", mu, "success probability per slot")->required();
  analytic->add_option("--model", model, "geo | replacement | all");

  std::string axis, seeds = "1";
  double from = 0.0, to = 0.0;
  int steps = 0;
  unsigned workers = 0;
  auto* sweep = app.add_subcommand("sweep", "vary one parameter over a grid and several seeds");
  sweep->add_option("--config", config_path, "base JSON run description")->required();
  sweep->add_option("--axis", axis, "lambda | q | N | p | k")->required();
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--steps", steps)->required();
  sweep->add_option("--seeds", seeds, "seed count (from the config seed) or comma list");
  sweep->add_option("--workers", workers, "parallel runs (default: hardware threads)");
  sweep->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* validate_cmd = app.add_subcommand("validate", "compare a dedicated-channel run with the closed forms");
  validate_cmd->add_option("--config", config_path, "JSON run description with n_sources = 1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*simulate) {
      const cli::RunConfig rc = cli::load_config(config_path);
      const MetricsReport report = run(rc.sim);
      Output out(out_path);
      cli::write_simulate_csv(out.stream(), report);
    } else if (*analytic) {
      cli::write_analytic(std::cout, QueueParams{lambda, mu}, cli::parse_model(model));
    } else if (*sweep) {
      const cli::RunConfig rc = cli::load_config(config_path);
      cli::SweepSpec spec;
      spec.axis = cli::parse_axis(axis);
      spec.from = from;
      spec.to = to;
      spec.steps = steps;
      spec.seeds = cli::parse_seeds(seeds, rc.sim.seed);
      spec.workers = workers;
      const auto points = cli::run_sweep(rc.sim, spec);
      Output out(out_path);
      cli::write_sweep_csv(out.stream(), spec.axis, points);
    } else if (*validate_cmd) {
      const cli::RunConfig rc = cli::load_config(config_path);
      const cli::ValidationReport rep = cli::validate_dedicated(rc);
      cli::write_validation(std::cout, rep);
      if (!rep.passed()) return kValidationFailed;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (!config_path.empty()) std::cerr << " in " << config_path;
    std::cerr << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
