#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "barrierscope/integrate.hpp"
#include "barrierscope/physcore.hpp"
#include "barrierscope/potential.hpp"
#include "barrierscope/solvers.hpp"

namespace barrierscope {

struct SweepFailure {
  std::size_t index;
  double energy;
  std::string message;
};

/// T(E) on a strictly increasing grid. Points whose solve failed hold NaN and
/// are listed in `failures`; closed-channel points hold T = 0.
struct TransmissionCurve {
  std::vector<double> energies;
  std::vector<double> T;
  SolverKind solver = SolverKind::backward;
  int resolution = 0;
  std::vector<SweepFailure> failures;
};

/// `n` evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

/// One solve per grid energy. With threads > 1 the points are split across
/// worker threads; every result lands in its grid slot, so the output is
/// identical to the serial sweep.
TransmissionCurve sweep(const Potential& p, std::span<const double> energies, const SolverChoice& choice,
                        const UnitSystem& units = {}, int threads = 1);

TransmissionCurve sweep(const Potential& p, double e_min, double e_max, int n_points, const SolverChoice& choice,
                        const UnitSystem& units = {}, int threads = 1);

struct ResonancePeak {
  double energy = 0.0;
  double transmission = 0.0;
  std::optional<double> fwhm;
  std::optional<int> n;
  std::optional<double> eigen_energy;
  std::optional<double> deviation;  // (E_peak - E_n) / E_n
};

struct RefineOptions {
  int max_iterations = 200;
  double energy_tolerance = 1e-6;  // eV
};

/// Local maxima of the curve (3-point test, leftmost point of a plateau),
/// each refined by golden-section maximisation of T(E) between its grid
/// neighbours with fresh solver calls. FWHM is interpolated on the curve at
/// T_peak/2 and left empty when the half level is not crossed on both sides.
std::vector<ResonancePeak> find_resonances(const TransmissionCurve& curve, const Potential& p,
                                           const SolverChoice& choice, const UnitSystem& units = {},
                                           RefineOptions options = {});

/// Same, refining against an arbitrary T(E).
std::vector<ResonancePeak> find_resonances(const TransmissionCurve& curve,
                                           const std::function<double(double)>& transmission,
                                           RefineOptions options = {});

/// Assigns harmonic levels E_n = (n + 1/2) hbar_omega. The lowest peak takes
/// its nearest level; every later peak takes the next level up, so the
/// assignment is injective and follows peak order.
std::vector<ResonancePeak> compare_to_harmonic(std::vector<ResonancePeak> peaks, double hbar_omega);

/// hbar omega of the untruncated well V = curvature (x - x0)^2, from
/// m omega^2 / 2 = curvature: hbar omega = sqrt(4 curvature hbar^2/2m).
double harmonic_omega_from_parabola(double curvature, const UnitSystem& units = {});

/// Coarse sweep, then a 100x denser scan of the neighbourhood of any sample
/// whose T exceeds 10x the local median, then find_resonances on the merged
/// curve. Catches resonances much narrower than the coarse grid.
struct ResonanceScan {
  TransmissionCurve curve;  // merged coarse + fine samples
  std::vector<ResonancePeak> peaks;
};

ResonanceScan scan_resonances(const Potential& p, double e_min, double e_max, int n_points,
                              const SolverChoice& choice, const UnitSystem& units = {}, int threads = 1,
                              RefineOptions options = {});

/// V(x) = curvature (x - center)^2 without truncation.
struct ParabolicWell {
  double curvature = 10.0;  // eV/nm^2
  double center = 1.0;      // nm
};

struct BoundState {
  int n = 0;
  double energy = 0.0;
  std::vector<double> xs;
  std::vector<double> psi;      // real eigenfunction, arbitrary scale
  std::vector<double> density;  // |psi|^2 scaled to max 1
};

/// (n + 1/2) hbar omega +- 0.4 hbar omega.
std::pair<double, double> harmonic_bracket(const ParabolicWell& well, int n, const UnitSystem& units = {});

/// Shooting method: integrate from the deep left tail with decaying data and
/// bisect the energy on the sign of psi at the right end until the bracket is
/// narrower than 1e-8 eV. Throws BracketError when the mismatch does not
/// change sign over the bracket.
BoundState shoot_eigenstate(const ParabolicWell& well, int n, std::pair<double, double> bracket,
                            const UnitSystem& units = {}, int steps = 6000);

/// |psi|^2 / max |psi|^2. Throws std::invalid_argument for an empty or
/// identically zero trajectory.
std::vector<double> density_profile(const Trajectory& t);

/// Positions of interior local maxima of a sampled profile, refined by a
/// parabola through each maximum and its neighbours.
std::vector<double> local_maxima(std::span<const double> xs, std::span<const double> values);

/// Number of sign changes of psi between consecutive samples.
int count_nodes(std::span<const double> psi);

}  // namespace barrierscope

namespace barrierscope {

/// The untruncated well behind a potential made only of identical quadratic
/// polynomial segments with positive curvature (e.g. the parabola built-in);
/// empty for anything else.
std::optional<ParabolicWell> parabolic_well_of(const Potential& p);

}  // namespace barrierscope
