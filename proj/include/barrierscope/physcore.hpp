#pragma once

#include <string>

namespace barrierscope {

/// CODATA 2018 values in SI units.
namespace codata {
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double elementary_charge = 1.602176634e-19;  // C (J per eV)
}  // namespace codata

/// hbar^2 / (2 m_e) expressed in eV nm^2.
inline constexpr double electron_hbar2_over_2m =
    codata::hbar * codata::hbar / (2.0 * codata::electron_mass) /
    codata::elementary_charge * 1e18;

/// Energies are in eV and lengths in nm throughout. The particle enters only
/// through the combination hbar^2/2m.
struct UnitSystem {
  double hbar2_over_2m = electron_hbar2_over_2m;
  std::string mass_label = "electron";

  static UnitSystem electron() { return {}; }
  /// Particle with mass ratio * m_e, e.g. a band effective mass.
  static UnitSystem effective_mass(double ratio);

  /// Throws DomainError unless hbar2_over_2m is finite and positive.
  void validate() const;
};

enum class Regime { propagating, evanescent };

struct WaveNumber {
  double value = 0.0;  // nm^-1, always >= 0
  Regime regime = Regime::propagating;

  bool propagating() const noexcept { return regime == Regime::propagating; }
};

/// k = sqrt((E - V) / (hbar^2/2m)) for E >= V, otherwise the decay constant
/// kappa = sqrt((V - E) / (hbar^2/2m)) flagged evanescent.
WaveNumber wavevector(double energy, double potential, const UnitSystem& units = {});

const char* to_string(Regime regime) noexcept;

}  // namespace barrierscope
