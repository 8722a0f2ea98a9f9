#include "barrierscope/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "barrierscope/errors.hpp"

namespace barrierscope {

namespace {

constexpr double kDegenerateSlab = 1e-12;  // eV

void require_incidence(const Potential& p, double energy) {
  if (!std::isfinite(energy)) throw InvalidIncidence("energy must be finite");
  if (!(energy > p.v_left())) {
    throw InvalidIncidence(fmt::format("E = {} eV does not exceed V_I = {} eV: no incident wave", energy,
                                       p.v_left()));
  }
}

ScatteringSolution closed_channel(const Potential& p, double energy, SolverKind kind, int resolution,
                                  const UnitSystem& units) {
  ScatteringSolution s;
  s.energy = energy;
  s.T = 0.0;
  s.R = 1.0;
  s.k_in = wavevector(energy, p.v_left(), units);
  s.k_out = wavevector(energy, p.v_right(), units);
  s.solver = kind;
  s.resolution = resolution;
  s.channel = Channel::closed;
  return s;
}

struct Mat2 {
  cplx a, b, c, d;

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 inverse() const {
    const cplx det = a * d - b * c;
    return {d / det, -b / det, -c / det, a / det};
  }
  std::pair<cplx, cplx> apply(cplx x, cplx y) const { return {a * x + b * y, c * x + d * y}; }
};

// Maps slab amplitudes (a, b) to (psi, psi') at local coordinate u.
// Propagating/evanescent: psi = a e^{iku} + b e^{-iku} with k real or i*kappa.
// Degenerate k = 0: psi = a + b u.
Mat2 slab_basis(double kinetic, double u, const UnitSystem& units) {
  if (std::abs(kinetic) < kDegenerateSlab) return {1.0, u, 0.0, 1.0};
  const cplx k = kinetic > 0.0 ? cplx(std::sqrt(kinetic / units.hbar2_over_2m), 0.0)
                               : cplx(0.0, std::sqrt(-kinetic / units.hbar2_over_2m));
  const cplx ik = cplx(0.0, 1.0) * k;
  const cplx ep = std::exp(ik * u);
  const cplx em = std::exp(-ik * u);
  return {ep, em, ik * ep, -ik * em};
}

double simpson_kappa(const Segment& seg, double a, double b, double energy, int intervals,
                     const UnitSystem& units) {
  // x(t) = a + (b - a)(3t^2 - 2t^3) flattens the sqrt behaviour of kappa at
  // turning points so Simpson keeps its order.
  const int n = intervals + (intervals % 2);
  auto integrand = [&](double t) {
    const double x = a + (b - a) * t * t * (3.0 - 2.0 * t);
    const double jac = 6.0 * (b - a) * t * (1.0 - t);
    const double excess = std::max(0.0, seg(x) - energy);
    return std::sqrt(excess / units.hbar2_over_2m) * jac;
  };
  double sum = integrand(0.0) + integrand(1.0);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(static_cast<double>(i) / n);
  return sum / (3.0 * n);
}

// Forbidden pieces clipped to one segment, so every quadrature stays inside a
// single smooth form.
std::vector<std::pair<const Segment*, Interval>> forbidden_pieces(const Potential& p, double energy, int scan) {
  std::vector<std::pair<const Segment*, Interval>> pieces;
  for (const auto& seg : p.segments()) {
    auto excess = [&](double x) { return seg(x) - energy; };
    const double width = seg.end - seg.start;
    std::vector<double> cuts{seg.start};
    double x_prev = seg.start;
    double g_prev = excess(x_prev);
    for (int i = 1; i <= scan; ++i) {
      const double x = seg.start + width * i / scan;
      const double g = excess(x);
      if ((g_prev > 0.0) != (g > 0.0)) {
        double lo = x_prev;
        double hi = x;
        const bool lo_positive = g_prev > 0.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((excess(mid) > 0.0) == lo_positive) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        cuts.push_back(0.5 * (lo + hi));
      }
      x_prev = x;
      g_prev = g;
    }
    cuts.push_back(seg.end);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double a = cuts[i];
      const double b = cuts[i + 1];
      if (b > a && excess(0.5 * (a + b)) > 0.0) pieces.push_back({&seg, {a, b}});
    }
  }
  return pieces;
}

}  // namespace

std::vector<Interval> forbidden_intervals(const Potential& p, double energy, int scan) {
  if (scan < 1) throw std::invalid_argument("scan must be >= 1");
  std::vector<Interval> merged;
  for (const auto& [seg, piece] : forbidden_pieces(p, energy, scan)) {
    if (!merged.empty() && piece.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, piece.end);
    } else {
      merged.push_back(piece);
    }
  }
  return merged;
}

ScatteringSolution solve_backward(const Potential& p, double energy, const IntegrationSettings& settings,
                                  const UnitSystem& units) {
  require_incidence(p, energy);
  if (!(energy > p.v_right())) return closed_channel(p, energy, SolverKind::backward, settings.steps, units);

  const WaveNumber k_in = wavevector(energy, p.v_left(), units);
  const WaveNumber k_out = wavevector(energy, p.v_right(), units);
  Trajectory traj = integrate_backward(p, energy, settings, units);
  const WaveState at0 = traj.front();

  const cplx i_k1(0.0, k_in.value);
  const cplx A = 0.5 * (at0.psi + at0.dpsi / i_k1);
  const cplx B = 0.5 * (at0.psi - at0.dpsi / i_k1);
  const double denom = std::norm(at0.psi - cplx(0.0, 1.0) * at0.dpsi / k_in.value);

  ScatteringSolution s;
  s.energy = energy;
  s.T = (k_out.value / k_in.value) * 4.0 / denom;
  s.R = std::norm(B / A);
  s.amplitudes = Amplitudes{A, B, 1.0};
  s.k_in = k_in;
  s.k_out = k_out;
  s.solver = SolverKind::backward;
  s.resolution = settings.steps;
  s.low_resolution = settings.low_resolution();
  if (settings.record_trajectory) s.trajectory = std::move(traj);
  return s;
}

ScatteringSolution solve_transfer_matrix(const Potential& p, double energy, int slices, const UnitSystem& units) {
  if (slices < 1) throw std::invalid_argument(fmt::format("slices must be >= 1, got {}", slices));
  units.validate();
  require_incidence(p, energy);
  if (!(energy > p.v_right())) return closed_channel(p, energy, SolverKind::transfer_matrix, slices, units);

  const double L = p.length();
  const double width = L / slices;
  // total maps (psi, psi') at x = L to (psi, psi') at x = 0.
  Mat2 total{1.0, 0.0, 0.0, 1.0};
  for (int j = 0; j < slices; ++j) {
    const double mid = L * (static_cast<double>(j) + 0.5) / slices;
    const double kinetic = energy - p.evaluate(mid);
    const Mat2 back = slab_basis(kinetic, 0.0, units) * slab_basis(kinetic, width, units).inverse();
    total = total * back;
  }

  const WaveNumber k_in = wavevector(energy, p.v_left(), units);
  const WaveNumber k_out = wavevector(energy, p.v_right(), units);
  const cplx F = 1.0;
  const WaveState atL = outgoing_wave(k_out.value, L);
  const auto [psi0, dpsi0] = total.apply(F * atL.psi, F * atL.dpsi);
  const cplx i_k1(0.0, k_in.value);
  const auto [A, B] = Mat2{1.0, 1.0, i_k1, -i_k1}.inverse().apply(psi0, dpsi0);

  ScatteringSolution s;
  s.energy = energy;
  s.T = (k_out.value / k_in.value) * std::norm(F) / std::norm(A);
  s.R = std::norm(B) / std::norm(A);
  s.amplitudes = Amplitudes{A, B, F};
  s.k_in = k_in;
  s.k_out = k_out;
  s.solver = SolverKind::transfer_matrix;
  s.resolution = slices;
  return s;
}

ScatteringSolution solve_wkb(const Potential& p, double energy, int quad_points, const UnitSystem& units) {
  if (quad_points < 2) throw std::invalid_argument(fmt::format("quad_points must be >= 2, got {}", quad_points));
  units.validate();
  require_incidence(p, energy);
  if (!(energy > p.v_right())) return closed_channel(p, energy, SolverKind::wkb, quad_points, units);

  double action = 0.0;
  for (const auto& [seg, piece] : forbidden_pieces(p, energy, 256)) {
    action += simpson_kappa(*seg, piece.start, piece.end, energy, quad_points, units);
  }
  ScatteringSolution s;
  s.energy = energy;
  s.T = std::exp(-2.0 * action);
  s.R = 1.0 - s.T;
  s.k_in = wavevector(energy, p.v_left(), units);
  s.k_out = wavevector(energy, p.v_right(), units);
  s.solver = SolverKind::wkb;
  s.resolution = quad_points;
  return s;
}

ScatteringSolution solve(const Potential& p, double energy, const SolverChoice& choice, const UnitSystem& units) {
  switch (choice.kind) {
    case SolverKind::backward:
      return solve_backward(p, energy, {choice.method, choice.resolution, choice.record_trajectory}, units);
    case SolverKind::transfer_matrix:
      return solve_transfer_matrix(p, energy, choice.resolution, units);
    case SolverKind::wkb:
      return solve_wkb(p, energy, choice.resolution, units);
  }
  throw std::invalid_argument("unknown solver");
}

const char* to_string(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::backward: return "backward";
    case SolverKind::transfer_matrix: return "transfer_matrix";
    case SolverKind::wkb: return "wkb";
  }
  return "?";
}

const char* to_string(Channel channel) noexcept { return channel == Channel::open ? "open" : "closed"; }

}  // namespace barrierscope
