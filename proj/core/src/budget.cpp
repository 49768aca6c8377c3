#include "qnoise/budget.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>

#include "json.hpp"
#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/fdt.hpp"
#include "qnoise/ifo_model.hpp"
#include "qnoise/limits.hpp"

#ifndef QNOISE_VERSION
#define QNOISE_VERSION "unknown"
#endif

namespace qnoise {

namespace {

struct NamedKind {
  const char* name;
  CurveKind kind;
};

constexpr NamedKind kinds[] = {
    {"sql", CurveKind::sql},
    {"qcrb", CurveKind::qcrb},
    {"loss_limit_a1", CurveKind::loss_limit_a1},
    {"loss_limit_a4", CurveKind::loss_limit_a4},
    {"full_optimal", CurveKind::full_optimal},
    {"full_fixed_zeta", CurveKind::full_fixed_zeta},
    {"fdt_floor", CurveKind::fdt_floor},
    {"taylor_qcrb_internal", CurveKind::taylor_qcrb_internal},
    {"taylor_qcrb_no_internal", CurveKind::taylor_qcrb_no_internal},
    {"taylor_loss_internal", CurveKind::taylor_loss_internal},
    {"taylor_loss_no_internal", CurveKind::taylor_loss_no_internal},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string sci12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

// Tracks how often an approximation was used outside its validity range.
class WarningLog {
 public:
  void note(const std::string& curve, bool valid) {
    if (!valid) ++counts_[curve];
  }
  std::vector<std::string> messages() const {
    std::vector<std::string> out;
    for (const auto& [curve, n] : counts_) {
      out.push_back(curve + ": approximation outside its validity range at " + std::to_string(n) +
                    " frequencies");
    }
    return out;
  }

 private:
  std::map<std::string, std::size_t> counts_;
};

double evaluate(const CurveSpec& curve, const Interferometer& ifo, double omega, WarningLog& log) {
  const IfoConfig& cfg = ifo.config();
  switch (curve.kind) {
    case CurveKind::sql:
      return sql(cfg.mirror_mass, cfg.arm_length, omega);
    case CurveKind::qcrb:
      return ifo.qcrb_lossless(omega);
    case CurveKind::loss_limit_a1:
      return loss_limit(ifo, omega, LossBranch::internal_squeezing);
    case CurveKind::loss_limit_a4:
      return loss_limit(ifo, omega, LossBranch::no_internal_squeezing);
    case CurveKind::full_optimal:
      return ifo.optimal_spectrum(omega).s_hh;
    case CurveKind::full_fixed_zeta:
      return ifo.homodyne_spectrum(omega, curve.zeta);
    case CurveKind::fdt_floor: {
      const auto e = fdt::loss_floor_fdt(cfg, omega);
      log.note(curve.name(), e.within_validity);
      return e.value;
    }
    case CurveKind::taylor_qcrb_internal: {
      const RoundTrip rt = ifo.round_trip(omega);
      const auto e = taylor_qcrb_internal(cfg.t_src, rt.rotation, rt.squeeze.r(),
                                          expansion_angle(rt.squeeze.theta()), cfg.r_input,
                                          cfg.arm_length, cfg.omega0, cfg.arm_power);
      log.note(curve.name(), e.within_validity);
      return e.value;
    }
    case CurveKind::taylor_qcrb_no_internal: {
      const auto e = taylor_qcrb_no_internal(cfg.t_src, cfg.rotation.at_omega(omega), cfg.r_input,
                                             cfg.arm_length, cfg.omega0, cfg.arm_power);
      log.note(curve.name(), e.within_validity);
      return e.value;
    }
    case CurveKind::taylor_loss_internal: {
      const auto e = taylor_loss_internal(ifo, omega);
      log.note(curve.name(), e.within_validity);
      return e.value;
    }
    case CurveKind::taylor_loss_no_internal: {
      const auto e = taylor_loss_no_internal(ifo, omega);
      log.note(curve.name(), e.within_validity);
      return e.value;
    }
  }
  throw DomainError("unhandled curve kind");
}

}  // namespace

std::string CurveSpec::name() const {
  for (const auto& k : kinds) {
    if (k.kind != kind) continue;
    if (kind != CurveKind::full_fixed_zeta) return k.name;
    char buf[64];
    std::snprintf(buf, sizeof buf, "full_fixed_zeta(%.6g)", zeta);
    return buf;
  }
  return "unknown";
}

CurveSpec parse_curve(const std::string& text) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  const std::string head = trim(s.substr(0, open));
  for (const auto& k : kinds) {
    if (head != k.name) continue;
    CurveSpec spec{k.kind, 0.0};
    if (k.kind == CurveKind::full_fixed_zeta) {
      const auto close = s.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open ||
          close != s.size() - 1) {
        throw ConfigError("curves", "full_fixed_zeta needs an angle, e.g. full_fixed_zeta(1.5708)");
      }
      const std::string arg = trim(s.substr(open + 1, close - open - 1));
      char* end = nullptr;
      spec.zeta = std::strtod(arg.c_str(), &end);
      if (arg.empty() || end != arg.c_str() + arg.size() || !std::isfinite(spec.zeta)) {
        throw ConfigError("curves", "invalid homodyne angle \"" + arg + "\"");
      }
    } else if (open != std::string::npos) {
      throw ConfigError("curves", "curve \"" + head + "\" takes no argument");
    }
    return spec;
  }
  throw ConfigError("curves", "unknown curve \"" + s + "\"");
}

std::vector<CurveSpec> parse_curve_list(const std::string& text) {
  std::vector<CurveSpec> out;
  std::string current;
  int depth = 0;
  auto flush = [&] {
    if (!trim(current).empty()) out.push_back(parse_curve(current));
    current.clear();
  };
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      flush();
    } else {
      current += ch;
    }
  }
  flush();
  return out;
}

void validate(const BudgetRequest& req) {
  if (!(req.band.f_min_hz >= 0.1)) {
    throw ConfigError("fmin", "must be at least 0.1 Hz");
  }
  if (!(req.band.f_max_hz > req.band.f_min_hz) || !std::isfinite(req.band.f_max_hz)) {
    throw ConfigError("fmax", "must exceed fmin");
  }
  if (req.points < 2 || req.points > 1000000) {
    throw ConfigError("points", "must lie in [2, 1000000]");
  }
  if (req.curves.empty()) throw ConfigError("curves", "select at least one curve");
}

BudgetResult run_budget(const BudgetRequest& req) {
  validate(req);
  const Interferometer ifo(req.config, req.band);
  BudgetResult result;
  result.freqs_hz = log_spaced_hz(req.band, req.points);
  result.config_hash = config_hash(req.config);
  WarningLog log;
  for (const auto& curve : req.curves) {
    NoiseSpectrum spectrum{curve.name(), result.freqs_hz, {}};
    spectrum.values.reserve(result.freqs_hz.size());
    for (double f : result.freqs_hz) {
      const double omega = constants::two_pi * f;
      try {
        spectrum.values.push_back(evaluate(curve, ifo, omega, log));
      } catch (const DomainError& e) {
        throw DegeneracyError(Degeneracy::expansion_breakdown, omega,
                              curve.name() + " at f = " + sci12(f) + " Hz: " + e.what());
      }
    }
    result.spectra.push_back(std::move(spectrum));
  }
  result.warnings = log.messages();
  return result;
}

double round_sig12(double x) { return std::strtod(sci12(x).c_str(), nullptr); }

namespace {

double output_value(double psd, Quantity q) { return q == Quantity::asd ? std::sqrt(psd) : psd; }

}  // namespace

void write_csv(std::ostream& out, const BudgetResult& result, Quantity quantity) {
  out << "f_hz";
  for (const auto& s : result.spectra) out << ',' << s.label;
  out << '\n';
  for (std::size_t i = 0; i < result.freqs_hz.size(); ++i) {
    out << sci12(result.freqs_hz[i]);
    for (const auto& s : result.spectra) out << ',' << sci12(output_value(s.values[i], quantity));
    out << '\n';
  }
}

void write_json(std::ostream& out, const BudgetResult& result, const BudgetRequest& req) {
  using nlohmann::json;
  auto column = [](const std::string& name, const std::vector<double>& values) {
    std::vector<double> rounded;
    rounded.reserve(values.size());
    for (double v : values) rounded.push_back(round_sig12(v));
    return json{{"name", name}, {"values", rounded}};
  };
  json columns = json::array();
  columns.push_back(column("f_hz", result.freqs_hz));
  for (const auto& s : result.spectra) {
    std::vector<double> v;
    v.reserve(s.values.size());
    for (double x : s.values) v.push_back(output_value(x, req.quantity));
    columns.push_back(column(s.label, v));
  }
  json doc;
  doc["metadata"] = {
      {"version", library_version()},
      {"config_hash", result.config_hash},
      {"constants", {{"c", constants::c}, {"hbar", constants::hbar}}},
      {"quantity", req.quantity == Quantity::psd ? "psd" : "asd"},
      {"units", req.quantity == Quantity::psd ? "1/Hz" : "1/sqrt(Hz)"},
      {"band_hz", {req.band.f_min_hz, req.band.f_max_hz}},
      {"points", req.points},
      {"warnings", result.warnings},
  };
  doc["columns"] = columns;
  out << doc.dump(2) << '\n';
}

const char* library_version() noexcept { return QNOISE_VERSION; }

}  // namespace qnoise
