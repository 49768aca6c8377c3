#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qnoise/ifo_config.hpp"
#include "qnoise/tabulated.hpp"

namespace qnoise {

enum class CurveKind {
  sql,
  qcrb,
  loss_limit_a1,
  loss_limit_a4,
  full_optimal,
  full_fixed_zeta,
  fdt_floor,
  taylor_qcrb_internal,
  taylor_qcrb_no_internal,
  taylor_loss_internal,
  taylor_loss_no_internal,
};

struct CurveSpec {
  CurveKind kind = CurveKind::sql;
  double zeta = 0.0;  // full_fixed_zeta only

  /// Stable column name, e.g. "loss_limit_a4" or "full_fixed_zeta(1.5708)".
  std::string name() const;
};

/// Parses one curve name; throws ConfigError("curves", ...) if unknown.
CurveSpec parse_curve(const std::string& text);
/// Comma-separated list; parentheses may hold the fixed homodyne angle.
std::vector<CurveSpec> parse_curve_list(const std::string& text);

enum class OutputFormat { csv, json };
enum class Quantity { psd, asd };

struct BudgetRequest {
  IfoConfig config;
  Band band;
  std::size_t points = 1000;
  std::vector<CurveSpec> curves;
  Quantity quantity = Quantity::psd;
};

/// Throws ConfigError for f_min < 0.1 Hz, points outside [2, 1e6], or an
/// empty curve list.
void validate(const BudgetRequest& req);

/// Strain PSD per frequency [1/Hz].
struct NoiseSpectrum {
  std::string label;
  std::vector<double> freqs_hz;
  std::vector<double> values;
};

struct BudgetResult {
  std::vector<double> freqs_hz;
  std::vector<NoiseSpectrum> spectra;
  std::vector<std::string> warnings;
  std::string config_hash;
};

/// Evaluates every requested curve on a log-spaced grid. Throws ConfigError or
/// DegeneracyError (with the offending frequency).
BudgetResult run_budget(const BudgetRequest& req);

/// Header `f_hz,<curve>...`, scientific notation with 12 significant digits.
void write_csv(std::ostream& out, const BudgetResult& result, Quantity quantity);

/// Array of columns plus a metadata block; numbers carry the same 12 digits as
/// the CSV.
void write_json(std::ostream& out, const BudgetResult& result, const BudgetRequest& req);

/// Rounds to 12 significant digits (the precision of both output encodings).
double round_sig12(double x);

const char* library_version() noexcept;

}  // namespace qnoise
