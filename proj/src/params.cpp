#include "patternfront/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <sstream>

#include "patternfront/errors.hpp"

namespace patternfront {

ModelParams ModelParams::make(double alpha0, double c0, double gamma, double eps, double q0,
                              double x0) {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(alpha0) || !finite(c0) || !finite(gamma) || !finite(eps) || !finite(q0) ||
      !finite(x0))
    throw DomainError("model parameters must be finite");
  if (!(alpha0 > 0.0)) throw DomainError("alpha0 must be > 0");
  if (!(c0 > 0.0)) throw DomainError("c0 must be > 0");
  if (!(eps >= 0.0)) throw DomainError("eps must be >= 0");
  if (!(x0 >= 0.0 && x0 < 2.0 * std::numbers::pi)) throw DomainError("x0 must lie in [0, 2*pi)");

  ModelParams p;
  p.alpha0_ = alpha0;
  p.c0_ = c0;
  p.gamma_ = gamma;
  p.eps_ = eps;
  p.q0_ = q0;
  p.x0_ = x0;
  const double kc2 = 1.0 + eps * q0;
  if (eps * q0 == 0.0) {
    p.kc_ = 1.0;
  } else {
    if (!(kc2 > 0.0)) throw DomainError("1 + eps*q0 must be positive");
    p.kc_ = std::sqrt(kc2);
  }
  return p;
}

ModelParams ModelParams::with_eps(double eps) const {
  return make(alpha0_, c0_, gamma_, eps, q0_, x0_);
}
ModelParams ModelParams::with_gamma(double gamma) const {
  return make(alpha0_, c0_, gamma, eps_, q0_, x0_);
}
ModelParams ModelParams::with_c0(double c0) const {
  return make(alpha0_, c0, gamma_, eps_, q0_, x0_);
}
ModelParams ModelParams::with_x0(double x0) const {
  return make(alpha0_, c0_, gamma_, eps_, q0_, x0);
}

double derived_delta(const ModelParams& params) {
  const double disc = params.c0() * params.c0() - 16.0 * params.alpha0();
  if (disc < 0.0)
    throw DomainError("c0^2 < 16*alpha0: oscillatory regime, Delta is not real");
  return std::sqrt(disc);
}

bool front_regime(const ModelParams& params) {
  return params.c0() * params.c0() > 16.0 * params.alpha0();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ModelParams parse_params(std::istream& in) {
  std::map<std::string, std::optional<double>> table = {
      {"alpha0", std::nullopt}, {"c0", std::nullopt}, {"gamma", std::nullopt},
      {"eps", std::nullopt},    {"q0", std::nullopt}, {"x0", std::nullopt}};
  std::map<std::string, int> where;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'", lineno);
    if (it->second) throw ConfigError("duplicate key '" + key + "'", lineno);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      throw ConfigError("value of '" + key + "' is not a decimal number", lineno);
    }
    if (used != value.size())
      throw ConfigError("trailing characters after value of '" + key + "'", lineno);
    it->second = v;
    where[key] = lineno;
  }

  for (const char* key : {"alpha0", "c0", "gamma", "eps"})
    if (!table[key]) throw ConfigError(std::string("missing required key '") + key + "'");

  try {
    return ModelParams::make(*table["alpha0"], *table["c0"], *table["gamma"], *table["eps"],
                             table["q0"].value_or(0.0), table["x0"].value_or(0.0));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ModelParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_params(in);
}

std::string canonical_text(const ModelParams& p) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "alpha0 = %.17g\nc0 = %.17g\ngamma = %.17g\neps = %.17g\nq0 = %.17g\nx0 = %.17g\n",
                p.alpha0(), p.c0(), p.gamma(), p.eps(), p.q0(), p.x0());
  return buf;
}

}  // namespace patternfront
