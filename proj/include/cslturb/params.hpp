#ifndef CSLTURB_PARAMS_HPP
#define CSLTURB_PARAMS_HPP

#include <optional>
#include <string>
#include <string_view>

namespace cslturb {

// All quantities are CGS: cm, g, s, erg.
inline constexpr double kDefaultHbar = 1.0545887e-27;  // erg s

// Collapse-model constants. alpha is the inverse localization length
// squared (cm^-2), lambda the collapse rate (s^-1), mass in grams.
struct CslParameters {
  double alpha = 0;
  double lambda = 0;
  double mass = 0;
  double hbar = kDefaultHbar;

  void validate() const;  // throws std::invalid_argument unless all > 0
};

// Quantities of the turbulence dictionary, all derived from CslParameters:
//   nu          = hbar / (2 mass)              diffusivity, cm^2/s
//   gamma       = lambda sqrt(4 pi / alpha)    collapse coupling, cm/s
//   delta_inj   = sqrt(2 / alpha)              injection length, cm
//   epsilon_inj = 2 nu^2 alpha lambda          injected energy rate, cm^2/s^3
//   reynolds    = (8 lambda / (alpha nu))^(1/3)
//   t_enh       = sqrt(3 / (alpha lambda nu))  enhanced-diffusion crossover, s
struct DerivedQuantities {
  double nu = 0;
  double gamma = 0;
  double delta_inj = 0;
  double epsilon_inj = 0;
  double reynolds = 0;
  double t_enh = 0;
};

enum class Preset { grw_micro, grw_macro };

std::optional<Preset> preset_from_string(std::string_view name);
std::string_view to_string(Preset p);

// Canonical GRW parameter sets: alpha = 1e10 cm^-2 for both;
// micro: lambda = 1e-16 s^-1, M = 1e-23 g; macro: lambda = 1e7 s^-1, M = 1 g.
CslParameters preset(Preset which);
CslParameters preset(std::string_view name);  // throws on unknown name

DerivedQuantities derive(const CslParameters& p);

// Round-trip text form, `key = value` per line (alpha, lambda, mass, hbar).
std::string to_config_text(const CslParameters& p);

}  // namespace cslturb

#endif
