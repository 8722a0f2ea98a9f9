#pragma once

// Closed-form reference values, independent of the library's numerics.
// Frozen values were evaluated at 40 digits from CODATA 2018 constants.

#include <cmath>
#include <complex>

namespace oracle {

inline constexpr double hbar2_over_2m = 0.038099821114859614226;  // eV nm^2, electron
inline constexpr double k_one_ev = 5.1231672228139934803;         // nm^-1, E = 1 eV, V = 0
inline constexpr double kappa_half_under_one = 3.6226262844044268541;

// Square barrier V0 = 1 eV, L = 1 nm, E = 0.5 eV.
inline constexpr double square_T = 0.0028501467163972168725;
inline constexpr double square_T_wkb = 0.00071355390855862114401;
inline const std::complex<double> square_psi0{-25.260062838765689001, 7.9150165688411872875};
inline const std::complex<double> square_dpsi0{91.466754749946183322, -28.803709249359673066};

// Parabola 10 (x-1)^2 on [0, 2], E = 5 eV: int kappa dx over the forbidden
// set, from the antiderivative of sqrt(u^2 - a^2). T_wkb = exp(-2 * this).
inline constexpr double parabola_wkb_action_5ev = 4.3162375194324030616;

// Step: V_II = V_III = 0.6 eV, E = 1 eV -> T = 4 k1 k3 / (k1 + k3)^2.
inline constexpr double step_T = 0.94930827607940236622;

inline constexpr double hbar_omega_curv10 = 1.2345010508680762436;

/// Rectangular barrier transmission, E < V0.
inline double rectangular_T(double v0, double width, double energy, double c = hbar2_over_2m) {
  const double kappa = std::sqrt((v0 - energy) / c);
  const double s = std::sinh(kappa * width);
  return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (v0 - energy)));
}

/// Rectangular barrier transmission, E > V0.
inline double rectangular_T_above(double v0, double width, double energy, double c = hbar2_over_2m) {
  const double q = std::sqrt((energy - v0) / c);
  const double s = std::sin(q * width);
  return 1.0 / (1.0 + v0 * v0 * s * s / (4.0 * energy * (energy - v0)));
}

}  // namespace oracle
