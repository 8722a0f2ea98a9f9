#include "barrierscope/physcore.hpp"

#include <cmath>

#include <fmt/format.h>

#include "barrierscope/errors.hpp"

namespace barrierscope {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(column > 0 ? fmt::format("line {}, column {}: {}", line, column, message)
                                    : fmt::format("line {}: {}", line, message)),
      detail_(message),
      line_(line),
      column_(column) {}

DivergenceError::DivergenceError(const std::string& message, double position)
    : NumericalError(fmt::format("{} (at x = {:.6g} nm)", message, position)), position_(position) {}

UnitSystem UnitSystem::effective_mass(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw DomainError(fmt::format("effective mass ratio must be positive, got {}", ratio));
  }
  return {electron_hbar2_over_2m / ratio, fmt::format("{:g} m_e", ratio)};
}

void UnitSystem::validate() const {
  if (!(hbar2_over_2m > 0.0) || !std::isfinite(hbar2_over_2m)) {
    throw DomainError(fmt::format("hbar^2/2m must be positive, got {}", hbar2_over_2m));
  }
}

WaveNumber wavevector(double energy, double potential, const UnitSystem& units) {
  const double kinetic = energy - potential;
  if (kinetic >= 0.0) {
    return {std::sqrt(kinetic / units.hbar2_over_2m), Regime::propagating};
  }
  return {std::sqrt(-kinetic / units.hbar2_over_2m), Regime::evanescent};
}

const char* to_string(Regime regime) noexcept {
  return regime == Regime::propagating ? "propagating" : "evanescent";
}

}  // namespace barrierscope
