#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnoise/constants.hpp"
#include "qnoise/tabulated.hpp"

namespace qnoise {

enum class InternalSqueezingMode { none, ponderomotive, fixed };

/// Squeezing generated inside the signal-recycling cavity. In `fixed` mode
/// the squeeze factor and angle are user tables; in `ponderomotive` mode they
/// follow from the radiation-pressure coupling at each frequency.
struct InternalSqueezing {
  InternalSqueezingMode mode = InternalSqueezingMode::none;
  Tabulated r = 0.0;
  Tabulated theta = 0.0;
};

/// Parameters of the single-mode interferometer model. JSON keys match the
/// member comments.
struct IfoConfig {
  double arm_length = 4000.0;           // "L" [m]
  double mirror_mass = 40.0;            // "M" [kg]
  double arm_power = 8.0e5;             // "P" [W]
  double omega0 = constants::two_pi * constants::c / 1064e-9;  // "omega0" [rad/s]
  double t_itm = 0.014;                 // "T_itm"
  double t_src = 0.14;                  // "T_src"
  double eps_arm = 1.0e-4;              // "eps_arm"
  std::vector<Tabulated> eps_src_channels{Tabulated(1.0e-3)};  // "eps_src_channels"
  double eps_ext = 0.1;                 // "eps_ext"
  double r_input = 0.0;                 // "r_input"
  /// "theta_input": a number [rad] or the string "optimal". Empty means the
  /// squeezed axis follows the best readout direction at each frequency.
  std::optional<double> theta_input = 0.0;
  InternalSqueezing internal_sqz;       // "internal_sqz"
  Tabulated rotation = 0.0;             // "Theta" [rad]
  Tabulated residual_phase = 0.0;       // "residual_phase" [rad]
};

/// Advanced-LIGO-like defaults (1064 nm carrier).
IfoConfig default_config();

/// Field-level validation; throws ConfigError naming the offending path.
void validate(const IfoConfig& cfg);

/// Additionally checks that every tabulated quantity covers `band`.
void validate(const IfoConfig& cfg, const Band& band);

/// Parse a JSON document. Missing keys take default_config() values; unknown
/// keys are rejected. Validates before returning.
IfoConfig parse_config(const std::string& json_text);
IfoConfig load_config(const std::string& path);

/// Canonical JSON (sorted keys, two-space indent).
std::string to_json(const IfoConfig& cfg);

/// FNV-1a 64 of the canonical compact JSON, as 16 hex digits.
std::string config_hash(const IfoConfig& cfg);

}  // namespace qnoise
