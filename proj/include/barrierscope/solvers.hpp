#pragma once

#include <optional>
#include <vector>

#include "barrierscope/integrate.hpp"
#include "barrierscope/physcore.hpp"
#include "barrierscope/potential.hpp"

namespace barrierscope {

enum class SolverKind { backward, transfer_matrix, wkb };

/// Whether Region III supports a propagating wave at this energy.
enum class Channel { open, closed };

/// psi_I = A e^{i k_I x} + B e^{-i k_I x},  psi_III = F e^{i k_III x}.
struct Amplitudes {
  cplx A;
  cplx B;
  cplx F;
};

struct ScatteringSolution {
  double energy = 0.0;
  double T = 0.0;
  double R = 0.0;
  std::optional<Amplitudes> amplitudes;  // absent for WKB
  WaveNumber k_in;
  WaveNumber k_out;
  std::optional<Trajectory> trajectory;
  SolverKind solver = SolverKind::backward;
  int resolution = 0;  // steps, slices or quadrature points
  Channel channel = Channel::open;
  bool low_resolution = false;
};

inline constexpr int kDefaultSteps = 2000;
inline constexpr int kDefaultSlices = 1000;
inline constexpr int kDefaultQuadPoints = 2000;

/// Backward integration: fix F = 1 at x = L, integrate to x = 0 and read
///   A = (psi(0) + psi'(0)/(i k_I)) / 2,   B = (psi(0) - psi'(0)/(i k_I)) / 2,
///   T = (k_III/k_I) * 4 / |psi(0) - i psi'(0)/k_I|^2,   R = |B/A|^2.
///
/// E <= V_III returns T = 0, R = 1 with Channel::closed. E <= V_I throws
/// InvalidIncidence. DivergenceError propagates from the integrator.
ScatteringSolution solve_backward(const Potential& p, double energy, const IntegrationSettings& settings = {},
                                  const UnitSystem& units = {});

/// Transfer matrix over `slices` uniform slabs, each holding V at the slab
/// midpoint. Slabs with |E - V| < 1e-12 eV use the linear (k = 0) solution.
ScatteringSolution solve_transfer_matrix(const Potential& p, double energy, int slices = kDefaultSlices,
                                         const UnitSystem& units = {});

/// T = exp(-2 int kappa dx) over the classically forbidden set {V > E};
/// R = 1 - T. No amplitudes.
ScatteringSolution solve_wkb(const Potential& p, double energy, int quad_points = kDefaultQuadPoints,
                             const UnitSystem& units = {});

/// One solver with its resolution, for sweeps and resonance refinement.
struct SolverChoice {
  SolverKind kind = SolverKind::backward;
  Method method = Method::rk4;
  int resolution = kDefaultSteps;
  bool record_trajectory = false;
};

ScatteringSolution solve(const Potential& p, double energy, const SolverChoice& choice,
                         const UnitSystem& units = {});

const char* to_string(SolverKind kind) noexcept;
const char* to_string(Channel channel) noexcept;

}  // namespace barrierscope

namespace barrierscope {

struct Interval {
  double start;
  double end;
};

/// Maximal subintervals of [0, L] where V(x) > E, in ascending order.
/// Sign changes are bracketed on `scan` samples per segment and refined by
/// bisection.
std::vector<Interval> forbidden_intervals(const Potential& p, double energy, int scan = 256);

}  // namespace barrierscope
