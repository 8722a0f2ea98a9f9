#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "barrierscope/physcore.hpp"
#include "barrierscope/potential.hpp"

namespace barrierscope {

using cplx = std::complex<double>;

enum class Method { rk4, numerov };

struct IntegrationSettings {
  Method method = Method::rk4;
  int steps = 2000;  // number of uniform intervals across the region
  bool record_trajectory = false;

  /// RK4 below five steps is allowed but coarse enough to be flagged.
  bool low_resolution() const noexcept { return method == Method::rk4 && steps < 5; }
  void validate() const;
};

struct WaveState {
  cplx psi;
  cplx dpsi;
};

/// Im(conj(psi) psi'), the flux invariant of the real-potential equation.
inline double wronskian(const WaveState& s) { return std::imag(std::conj(s.psi) * s.dpsi); }

/// Samples of psi and psi' in ascending x. Without record_trajectory only the
/// two end points are kept.
struct Trajectory {
  std::vector<double> xs;
  std::vector<cplx> psi;
  std::vector<cplx> dpsi;
  bool low_resolution = false;

  std::size_t size() const noexcept { return xs.size(); }
  WaveState at(std::size_t i) const { return {psi[i], dpsi[i]}; }
  WaveState front() const { return at(0); }
  WaveState back() const { return at(xs.size() - 1); }
};

/// |psi| beyond this aborts the integration with DivergenceError.
inline constexpr double kDivergenceLimit = 1e150;

/// F e^{ikx} with F = 1, and its derivative, at x.
WaveState outgoing_wave(double k, double x);

/// Transmitted-wave data at x = L: psi = e^{i k_III L}, psi' = i k_III psi.
/// Throws DomainError when E <= V_III (no propagating transmitted wave).
WaveState initial_conditions(const Potential& p, double energy, const UnitSystem& units = {});

using PotentialFn = std::function<double(double)>;

/// Integrates psi'' = (V(x) - E) / (hbar^2/2m) psi on a uniform grid of
/// `settings.steps` intervals from x_from to x_to (either direction),
/// starting from `start` at x_from.
Trajectory propagate(const PotentialFn& potential, double energy, double x_from, double x_to, WaveState start,
                     const IntegrationSettings& settings, const UnitSystem& units = {});

/// Integrates from x = L down to x = 0 starting from the transmitted wave.
Trajectory integrate_backward(const Potential& p, double energy, const IntegrationSettings& settings,
                              const UnitSystem& units = {});

/// Same, with caller-supplied data at x = L.
Trajectory integrate_backward(const Potential& p, double energy, const IntegrationSettings& settings,
                              const UnitSystem& units, WaveState at_right);

const char* to_string(Method m) noexcept;

}  // namespace barrierscope
