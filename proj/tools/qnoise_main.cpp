// qnoise: quantum-noise budget and cross-validation for loss-limited
// interferometers.
//
//   qnoise budget   [--config PATH] [--fmin HZ] [--fmax HZ] [--points N]
//                   [--curves LIST] [--out PATH] [--format csv|json]
//                   [--quantity psd|asd]
//   qnoise validate [--config PATH] [--fmin HZ] [--fmax HZ] [--seed N]
//   qnoise print-config-template
//
// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical degeneracy.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qnoise/budget.hpp"
#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/ifo_config.hpp"
#include "qnoise/validation.hpp"

namespace {

constexpr int exit_validation_failed = 1;
constexpr int exit_config = 2;
constexpr int exit_degenerate = 3;

qnoise::IfoConfig config_from(const std::string& path) {
  return path.empty() ? qnoise::default_config() : qnoise::load_config(path);
}

int run_budget_command(const std::string& config_path, const qnoise::Band& band,
                       std::size_t points, const std::string& curves, const std::string& out_path,
                       const std::string& format, const std::string& quantity) {
  qnoise::BudgetRequest req;
  req.config = config_from(config_path);
  req.band = band;
  req.points = points;
  req.curves = qnoise::parse_curve_list(curves);
  req.quantity = quantity == "asd" ? qnoise::Quantity::asd : qnoise::Quantity::psd;

  const auto result = qnoise::run_budget(req);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) throw qnoise::ConfigError("out", "cannot open " + out_path + " for writing");
    out = &file;
  }
  if (format == "json") {
    qnoise::write_json(*out, result, req);
  } else {
    qnoise::write_csv(*out, result, req.quantity);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-noise budget for loss-limited laser interferometers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qnoise::library_version());

  std::string config_path;
  qnoise::Band band;
  std::size_t points = 1000;
  std::string curves = "sql,qcrb,loss_limit_a1,loss_limit_a4,full_optimal";
  std::string out_path;
  std::string format = "csv";
  std::string quantity = "psd";
  std::uint64_t seed = 1;

  auto* budget = app.add_subcommand("budget", "Evaluate sensitivity curves on a log-spaced grid");
  budget->add_option("--config", config_path, "Interferometer config (JSON); defaults built in");
  budget->add_option("--fmin", band.f_min_hz, "Lowest frequency [Hz]")->capture_default_str();
  budget->add_option("--fmax", band.f_max_hz, "Highest frequency [Hz]")->capture_default_str();
  budget->add_option("--points", points, "Number of frequencies")->capture_default_str();
  budget->add_option("--curves", curves,
                     "Comma-separated: sql, qcrb, loss_limit_a1, loss_limit_a4, full_optimal, "
                     "full_fixed_zeta(ZETA), fdt_floor, taylor_qcrb_internal, "
                     "taylor_qcrb_no_internal, taylor_loss_internal, taylor_loss_no_internal")
      ->capture_default_str();
  budget->add_option("--out", out_path, "Output file (stdout when omitted)");
  budget->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  budget->add_option("--quantity", quantity, "psd: S_hh [1/Hz]; asd: sqrt(S_hh) [1/sqrt(Hz)]")
      ->check(CLI::IsMember({"psd", "asd"}))
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Run the cross-validation suite");
  validate->add_option("--config", config_path, "Interferometer config (JSON)");
  validate->add_option("--fmin", band.f_min_hz, "Lowest frequency [Hz]")->capture_default_str();
  validate->add_option("--fmax", band.f_max_hz, "Highest frequency [Hz]")->capture_default_str();
  validate->add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();

  auto* tmpl = app.add_subcommand("print-config-template", "Print the default config as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (*budget) {
      return run_budget_command(config_path, band, points, curves, out_path, format, quantity);
    }
    if (*validate) {
      const auto cfg = config_from(config_path);
      qnoise::validate(cfg, band);
      const auto report = qnoise::run_validation(cfg, band, seed);
      qnoise::print_report(std::cout, report);
      return report.all_passed() ? 0 : exit_validation_failed;
    }
    if (*tmpl) {
      std::cout << qnoise::to_json(qnoise::default_config());
      return 0;
    }
  } catch (const qnoise::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const qnoise::DegeneracyError& e) {
    std::cerr << "numerical degeneracy (" << qnoise::to_string(e.kind()) << ") at f = "
              << e.omega() / qnoise::constants::two_pi << " Hz: " << e.what() << '\n';
    return exit_degenerate;
  } catch (const qnoise::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  }
  return 0;
}
