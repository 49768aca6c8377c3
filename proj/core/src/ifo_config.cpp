#include "qnoise/ifo_config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/quadrature.hpp"

namespace qnoise {

using json = nlohmann::json;

IfoConfig default_config() { return IfoConfig{}; }

namespace {

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_positive(double x, const std::string& field) {
  require(std::isfinite(x) && x > 0.0, field, "must be positive and finite, got " + fmt(x));
}

void require_open_unit(double x, const std::string& field) {
  require(std::isfinite(x) && x > 0.0 && x < 1.0, field, "must lie in (0, 1), got " + fmt(x));
}

void require_loss(double x, const std::string& field) {
  require(std::isfinite(x) && x >= 0.0 && x < 1.0, field, "must lie in [0, 1), got " + fmt(x));
}

void require_loss_table(const Tabulated& t, const std::string& field) {
  require(t.min_value() >= 0.0 && t.max_value() < 1.0, field + ".values",
          "loss values must lie in [0, 1)");
}

void require_covers(const Tabulated& t, const Band& band, const std::string& field) {
  require(t.covers(band), field,
          "table does not cover the analysis band [" + fmt(band.f_min_hz) + ", " +
              fmt(band.f_max_hz) + "] Hz");
}

// ---- JSON reading ----

double read_number(const json& j, const std::string& field) {
  require(j.is_number(), field, "expected a number");
  return j.get<double>();
}

std::vector<double> read_column(const json& j, const std::string& field) {
  require(j.is_array(), field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Tabulated read_tabulated(const json& j, const std::string& field) {
  if (j.is_number()) {
    const double v = j.get<double>();
    require(std::isfinite(v), field, "must be finite");
    return Tabulated(v);
  }
  require(j.is_object(), field, "expected a number or {\"f_hz\": [...], \"values\": [...]}");
  for (const auto& [key, _] : j.items()) {
    require(key == "f_hz" || key == "values", field + "." + key, "unknown key");
  }
  require(j.contains("f_hz"), field + ".f_hz", "missing");
  require(j.contains("values"), field + ".values", "missing");
  try {
    return Tabulated(read_column(j.at("f_hz"), field + ".f_hz"),
                     read_column(j.at("values"), field + ".values"));
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
}

InternalSqueezingMode read_mode(const json& j, const std::string& field) {
  require(j.is_string(), field, "expected \"none\", \"ponderomotive\" or \"fixed\"");
  const auto s = j.get<std::string>();
  if (s == "none") return InternalSqueezingMode::none;
  if (s == "ponderomotive") return InternalSqueezingMode::ponderomotive;
  if (s == "fixed") return InternalSqueezingMode::fixed;
  throw ConfigError(field, "unknown mode \"" + s + "\"");
}

InternalSqueezing read_internal(const json& j) {
  const std::string field = "internal_sqz";
  InternalSqueezing out;
  if (j.is_string()) {
    out.mode = read_mode(j, field);
    require(out.mode != InternalSqueezingMode::fixed, field,
            "\"fixed\" needs an object with r and theta tables");
    return out;
  }
  require(j.is_object(), field, "expected a mode string or an object");
  for (const auto& [key, _] : j.items()) {
    require(key == "mode" || key == "r" || key == "theta", field + "." + key, "unknown key");
  }
  require(j.contains("mode"), field + ".mode", "missing");
  out.mode = read_mode(j.at("mode"), field + ".mode");
  if (j.contains("r")) out.r = read_tabulated(j.at("r"), field + ".r");
  if (j.contains("theta")) out.theta = read_tabulated(j.at("theta"), field + ".theta");
  if (out.mode == InternalSqueezingMode::fixed) {
    require(j.contains("r"), field + ".r", "required in fixed mode");
    require(j.contains("theta"), field + ".theta", "required in fixed mode");
  }
  return out;
}

// ---- JSON writing ----

json tab_to_json(const Tabulated& t) {
  if (t.is_constant()) return t.values().front();
  const auto f = t.freqs_hz();
  const auto v = t.values();
  return json{{"f_hz", std::vector<double>(f.begin(), f.end())},
              {"values", std::vector<double>(v.begin(), v.end())}};
}

json config_to_json(const IfoConfig& cfg) {
  json j;
  j["L"] = cfg.arm_length;
  j["M"] = cfg.mirror_mass;
  j["P"] = cfg.arm_power;
  j["omega0"] = cfg.omega0;
  j["T_itm"] = cfg.t_itm;
  j["T_src"] = cfg.t_src;
  j["eps_arm"] = cfg.eps_arm;
  j["eps_ext"] = cfg.eps_ext;
  json channels = json::array();
  for (const auto& c : cfg.eps_src_channels) channels.push_back(tab_to_json(c));
  j["eps_src_channels"] = channels;
  j["r_input"] = cfg.r_input;
  if (cfg.theta_input) {
    j["theta_input"] = *cfg.theta_input;
  } else {
    j["theta_input"] = "optimal";
  }
  switch (cfg.internal_sqz.mode) {
    case InternalSqueezingMode::none:
      j["internal_sqz"] = "none";
      break;
    case InternalSqueezingMode::ponderomotive:
      j["internal_sqz"] = "ponderomotive";
      break;
    case InternalSqueezingMode::fixed:
      j["internal_sqz"] = json{{"mode", "fixed"},
                               {"r", tab_to_json(cfg.internal_sqz.r)},
                               {"theta", tab_to_json(cfg.internal_sqz.theta)}};
      break;
  }
  j["Theta"] = tab_to_json(cfg.rotation);
  j["residual_phase"] = tab_to_json(cfg.residual_phase);
  return j;
}

}  // namespace

void validate(const IfoConfig& cfg) {
  require_positive(cfg.arm_length, "L");
  require_positive(cfg.mirror_mass, "M");
  require_positive(cfg.arm_power, "P");
  require_positive(cfg.omega0, "omega0");
  require_open_unit(cfg.t_itm, "T_itm");
  require_open_unit(cfg.t_src, "T_src");
  require_loss(cfg.eps_arm, "eps_arm");
  require_loss(cfg.eps_ext, "eps_ext");
  for (std::size_t i = 0; i < cfg.eps_src_channels.size(); ++i) {
    require_loss_table(cfg.eps_src_channels[i], "eps_src_channels[" + std::to_string(i) + "]");
  }
  require(std::isfinite(cfg.r_input) && std::abs(cfg.r_input) <= max_squeeze_factor, "r_input",
          "must be finite with |r_input| <= 20, got " + fmt(cfg.r_input));
  if (cfg.theta_input) {
    require(std::isfinite(*cfg.theta_input), "theta_input", "must be finite");
  }
  if (cfg.internal_sqz.mode == InternalSqueezingMode::fixed) {
    require(cfg.internal_sqz.r.max_value() <= max_squeeze_factor &&
                cfg.internal_sqz.r.min_value() >= -max_squeeze_factor,
            "internal_sqz.r", "squeeze factors must satisfy |r| <= 20");
  }
}

void validate(const IfoConfig& cfg, const Band& band) {
  validate(cfg);
  require(band.f_min_hz >= 0.1, "band.f_min_hz", "must be at least 0.1 Hz, got " + fmt(band.f_min_hz));
  require(std::isfinite(band.f_max_hz) && band.f_max_hz > band.f_min_hz, "band.f_max_hz",
          "must exceed f_min");
  for (std::size_t i = 0; i < cfg.eps_src_channels.size(); ++i) {
    require_covers(cfg.eps_src_channels[i], band, "eps_src_channels[" + std::to_string(i) + "]");
  }
  require_covers(cfg.rotation, band, "Theta");
  require_covers(cfg.residual_phase, band, "residual_phase");
  if (cfg.internal_sqz.mode == InternalSqueezingMode::fixed) {
    require_covers(cfg.internal_sqz.r, band, "internal_sqz.r");
    require_covers(cfg.internal_sqz.theta, band, "internal_sqz.theta");
  }
}

IfoConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  require(j.is_object(), "<document>", "top level must be an object");

  static const std::set<std::string> known = {
      "L",       "M",           "P",     "omega0",       "T_itm",       "T_src",
      "eps_arm", "eps_src_channels", "eps_ext", "r_input", "theta_input", "internal_sqz",
      "Theta",   "residual_phase"};
  for (const auto& [key, _] : j.items()) {
    require(known.contains(key), key, "unknown key");
  }

  IfoConfig cfg = default_config();
  auto number = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = read_number(j.at(key), key);
  };
  number("L", cfg.arm_length);
  number("M", cfg.mirror_mass);
  number("P", cfg.arm_power);
  number("omega0", cfg.omega0);
  number("T_itm", cfg.t_itm);
  number("T_src", cfg.t_src);
  number("eps_arm", cfg.eps_arm);
  number("eps_ext", cfg.eps_ext);
  number("r_input", cfg.r_input);

  if (j.contains("eps_src_channels")) {
    const auto& arr = j.at("eps_src_channels");
    require(arr.is_array(), "eps_src_channels", "expected an array of channels");
    cfg.eps_src_channels.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      cfg.eps_src_channels.push_back(
          read_tabulated(arr[i], "eps_src_channels[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("theta_input")) {
    const auto& t = j.at("theta_input");
    if (t.is_string()) {
      require(t.get<std::string>() == "optimal", "theta_input",
              "expected a number or \"optimal\"");
      cfg.theta_input.reset();
    } else {
      cfg.theta_input = read_number(t, "theta_input");
    }
  }
  if (j.contains("internal_sqz")) cfg.internal_sqz = read_internal(j.at("internal_sqz"));
  if (j.contains("Theta")) cfg.rotation = read_tabulated(j.at("Theta"), "Theta");
  if (j.contains("residual_phase")) {
    cfg.residual_phase = read_tabulated(j.at("residual_phase"), "residual_phase");
  }
  validate(cfg);
  return cfg;
}

IfoConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const IfoConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

std::string config_hash(const IfoConfig& cfg) {
  const std::string text = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

}  // namespace qnoise
