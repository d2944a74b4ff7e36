#include "cslturb/params.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cslturb {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void CslParameters::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be > 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("mass must be > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be > 0");
}

std::optional<Preset> preset_from_string(std::string_view name) {
  if (name == "grw_micro") return Preset::grw_micro;
  if (name == "grw_macro") return Preset::grw_macro;
  return std::nullopt;
}

std::string_view to_string(Preset p) {
  return p == Preset::grw_micro ? "grw_micro" : "grw_macro";
}

CslParameters preset(Preset which) {
  CslParameters p;
  p.alpha = 1e10;
  p.hbar = kDefaultHbar;
  if (which == Preset::grw_micro) {
    p.lambda = 1e-16;
    p.mass = 1e-23;
  } else {
    p.lambda = 1e7;
    p.mass = 1.0;
  }
  return p;
}

CslParameters preset(std::string_view name) {
  const auto p = preset_from_string(name);
  if (!p) throw std::invalid_argument("unknown preset: " + std::string(name));
  return preset(*p);
}

DerivedQuantities derive(const CslParameters& p) {
  p.validate();
  DerivedQuantities d;
  d.nu = p.hbar / (2.0 * p.mass);
  d.gamma = p.lambda * std::sqrt(4.0 * kPi / p.alpha);
  d.delta_inj = std::sqrt(2.0 / p.alpha);
  d.epsilon_inj = 2.0 * d.nu * d.nu * p.alpha * p.lambda;
  d.reynolds = std::cbrt(8.0 * p.lambda / (p.alpha * d.nu));
  d.t_enh = std::sqrt(3.0 / (p.alpha * p.lambda * d.nu));
  return d;
}

std::string to_config_text(const CslParameters& p) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "alpha = %.17g\nlambda = %.17g\nmass = %.17g\nhbar = %.17g\n",
                p.alpha, p.lambda, p.mass, p.hbar);
  return buf;
}

}  // namespace cslturb
