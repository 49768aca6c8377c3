#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qnoise/ifo_config.hpp"
#include "qnoise/tabulated.hpp"

namespace qnoise {

struct ValidationCheck {
  std::string name;
  double max_rel_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
};

/// Cross-module invariant suite: symplectic structure, decomposition
/// round-trip, optimal readout against a homodyne grid search, monotonicity in
/// each loss, FDT oracle against the pipeline, expansions against the exact
/// pipeline, and the first-order loss split. Deterministic for a fixed config,
/// band and seed.
ValidationReport run_validation(const IfoConfig& cfg, const Band& band, std::uint64_t seed);

void print_report(std::ostream& out, const ValidationReport& report);

}  // namespace qnoise
