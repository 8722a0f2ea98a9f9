#include "barrierscope/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "barrierscope/errors.hpp"

namespace barrierscope {

namespace {

void check_finite(const cplx& psi, const cplx& dpsi, double x) {
  const bool finite = std::isfinite(psi.real()) && std::isfinite(psi.imag()) && std::isfinite(dpsi.real()) &&
                      std::isfinite(dpsi.imag());
  if (!finite) throw DivergenceError("non-finite wavefunction", x);
  if (std::abs(psi) > kDivergenceLimit) throw DivergenceError("wavefunction exceeded divergence limit", x);
}

// Solutions of phi'' = f phi with constant f: C has C(0)=1, C'(0)=0 and
// S has S(0)=0, S'(0)=1. Cm1 = C - 1 without cancellation.
struct LocalBasis {
  double f;

  double C(double u) const { return 1.0 + Cm1(u); }
  double Cm1(double u) const {
    if (f < 0.0) {
      const double r = std::sin(0.5 * std::sqrt(-f) * u);
      return -2.0 * r * r;
    }
    if (f > 0.0) {
      const double r = std::sinh(0.5 * std::sqrt(f) * u);
      return 2.0 * r * r;
    }
    return 0.0;
  }
  double S(double u) const {
    if (f < 0.0) {
      const double q = std::sqrt(-f);
      return std::sin(q * u) / q;
    }
    if (f > 0.0) {
      const double q = std::sqrt(f);
      return std::sinh(q * u) / q;
    }
    return u;
  }
};

// phi(x0 + h) ~= (1 + cm1) phi(x0) + s phi'(x0) for phi'' = f(x) phi.
//
// Variation of constants around the local value f0 = f(x0):
//   phi(h) = phi0 C(h) + phi0' S(h) + int_0^h S(h - t) (f(t) - f0) phi(t) dt,
// with phi(t) inside the integral replaced by phi0 C(t) + phi0' S(t) and the
// integral done by 3-point Gauss-Legendre. Exact when f is constant on the
// step; local error O(h^6) otherwise.
struct StepCoefficients {
  double cm1;
  double s;
};

StepCoefficients fitted_step(const PotentialFn& potential, double energy, double inv_c2m, double x0, double f0,
                             double h) {
  static constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const LocalBasis basis{f0};
  double cm1 = basis.Cm1(h);
  double s = basis.S(h);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double t = 0.5 * h * (1.0 + nodes[j]);
    const double df = (potential(x0 + t) - energy) * inv_c2m - f0;
    if (df == 0.0) continue;
    const double w = 0.5 * h * weights[j] * basis.S(h - t) * df;
    cm1 += w * basis.C(t);
    s += w * basis.S(t);
  }
  return {cm1, s};
}

// Numerov weight beta(s), s = -f h^2, chosen so that the three-term recurrence
//   psi+ - 2 psi + psi- = h^2 [beta (g+ + g-) + (1 - 2 beta) g],  g = f psi
// is exact for e^{+-i sqrt(-f) x} when f is constant. beta(0) = 1/12 is the
// classical Numerov weight.
double fitted_beta(double s) {
  if (std::abs(s) < 1e-2) {
    return 1.0 / 12.0 + s * (1.0 / 240.0 + s * (1.0 / 6048.0 + s * (1.0 / 172800.0)));
  }
  const double c = s > 0.0 ? std::cos(std::sqrt(s)) : std::cosh(std::sqrt(-s));
  return (s - 2.0 + 2.0 * c) / (2.0 * s * (1.0 - c));
}

struct Grid {
  std::vector<double> xs;  // in integration order, xs.front() == x_from
  double h;
};

Grid make_grid(double x_from, double x_to, int n) {
  Grid g{std::vector<double>(static_cast<std::size_t>(n) + 1), (x_to - x_from) / n};
  for (int i = 0; i <= n; ++i) g.xs[i] = x_from + (x_to - x_from) * (static_cast<double>(i) / n);
  g.xs.back() = x_to;
  return g;
}

Trajectory finish(std::vector<double> xs, std::vector<cplx> psi, std::vector<cplx> dpsi, bool ascending) {
  if (!ascending) {
    std::reverse(xs.begin(), xs.end());
    std::reverse(psi.begin(), psi.end());
    std::reverse(dpsi.begin(), dpsi.end());
  }
  return {std::move(xs), std::move(psi), std::move(dpsi), false};
}

Trajectory run_rk4(const PotentialFn& potential, double energy, double x_from, double x_to, WaveState start,
                   int n, bool record, double inv_c2m) {
  // f on the half-step grid: even indices are nodes, odd are midpoints.
  std::vector<double> f(2 * static_cast<std::size_t>(n) + 1);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = (j + 1 == f.size()) ? x_to : x_from + (x_to - x_from) * (static_cast<double>(j) / (2 * n));
    f[j] = (potential(x) - energy) * inv_c2m;
  }
  const Grid grid = make_grid(x_from, x_to, n);
  const double h = grid.h;

  std::vector<double> xs;
  std::vector<cplx> psi_out;
  std::vector<cplx> dpsi_out;
  const std::size_t keep = record ? grid.xs.size() : 2;
  xs.reserve(keep);
  psi_out.reserve(keep);
  dpsi_out.reserve(keep);
  xs.push_back(x_from);
  psi_out.push_back(start.psi);
  dpsi_out.push_back(start.dpsi);

  cplx y = start.psi;
  cplx dy = start.dpsi;
  for (int i = 0; i < n; ++i) {
    const double f0 = f[2 * i];
    const double fm = f[2 * i + 1];
    const double f1 = f[2 * i + 2];
    const cplx k1y = dy;
    const cplx k1d = f0 * y;
    const cplx k2y = dy + 0.5 * h * k1d;
    const cplx k2d = fm * (y + 0.5 * h * k1y);
    const cplx k3y = dy + 0.5 * h * k2d;
    const cplx k3d = fm * (y + 0.5 * h * k2y);
    const cplx k4y = dy + h * k3d;
    const cplx k4d = f1 * (y + h * k3y);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    dy += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    check_finite(y, dy, grid.xs[i + 1]);
    if (record || i + 1 == n) {
      xs.push_back(grid.xs[i + 1]);
      psi_out.push_back(y);
      dpsi_out.push_back(dy);
    }
  }
  return finish(std::move(xs), std::move(psi_out), std::move(dpsi_out), x_to > x_from);
}

Trajectory run_numerov(const PotentialFn& potential, double energy, double x_from, double x_to, WaveState start,
                       int n, bool record, double inv_c2m) {
  const Grid grid = make_grid(x_from, x_to, n);
  const double h = grid.h;
  const double h2 = h * h;
  std::vector<double> f(grid.xs.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = (potential(grid.xs[i]) - energy) * inv_c2m;

  // Increment form of the recurrence: carrying d_i = psi_{i+1} - psi_i keeps
  // round-off from growing with the step count.
  std::vector<cplx> psi(grid.xs.size());
  std::vector<cplx> d(grid.xs.size() - 1);
  psi[0] = start.psi;
  const auto first = fitted_step(potential, energy, inv_c2m, grid.xs[0], f[0], h);
  d[0] = first.cm1 * start.psi + first.s * start.dpsi;
  psi[1] = psi[0] + d[0];
  check_finite(psi[1], start.dpsi, grid.xs[1]);

  for (int i = 1; i < n; ++i) {
    const double beta = fitted_beta(-f[i] * h2);
    const double a_next = 1.0 - beta * h2 * f[i + 1];
    const cplx rhs =
        d[i - 1] + h2 * (beta * (f[i + 1] * psi[i] + f[i - 1] * psi[i - 1]) + (1.0 - 2.0 * beta) * f[i] * psi[i]);
    d[i] = rhs / a_next;
    psi[i + 1] = psi[i] + d[i];
    check_finite(psi[i + 1], 0.0, grid.xs[i + 1]);
  }

  // psi' at the last node from (psi_n, psi_{n-1}) by inverting the fitted step.
  auto end_derivative = [&](std::size_t i) {
    const auto sc = fitted_step(potential, energy, inv_c2m, grid.xs[i], f[i], -h);
    const cplx dpsi = (-d[i - 1] - sc.cm1 * psi[i]) / sc.s;
    check_finite(psi[i], dpsi, grid.xs[i]);
    return dpsi;
  };
  // Interior nodes use both neighbours; the difference of the two fitted
  // steps cancels the even-order error terms.
  auto interior_derivative = [&](std::size_t i) {
    const auto fwd = fitted_step(potential, energy, inv_c2m, grid.xs[i], f[i], h);
    const auto bwd = fitted_step(potential, energy, inv_c2m, grid.xs[i], f[i], -h);
    const cplx dpsi = (d[i] + d[i - 1] - (fwd.cm1 - bwd.cm1) * psi[i]) / (fwd.s - bwd.s);
    check_finite(psi[i], dpsi, grid.xs[i]);
    return dpsi;
  };

  const auto last = static_cast<std::size_t>(n);
  std::vector<double> xs;
  std::vector<cplx> psi_out;
  std::vector<cplx> dpsi_out;
  if (record) {
    xs = grid.xs;
    psi_out = psi;
    dpsi_out.resize(psi.size());
    dpsi_out[0] = start.dpsi;
    for (std::size_t i = 1; i < last; ++i) dpsi_out[i] = interior_derivative(i);
    dpsi_out[last] = end_derivative(last);
  } else {
    xs = {x_from, x_to};
    psi_out = {psi[0], psi[last]};
    dpsi_out = {start.dpsi, end_derivative(last)};
  }
  return finish(std::move(xs), std::move(psi_out), std::move(dpsi_out), x_to > x_from);
}

}  // namespace

void IntegrationSettings::validate() const {
  if (steps < 1) throw std::invalid_argument(fmt::format("steps must be >= 1, got {}", steps));
}

WaveState outgoing_wave(double k, double x) {
  const cplx psi = std::exp(cplx(0.0, k * x));
  return {psi, cplx(0.0, k) * psi};
}

WaveState initial_conditions(const Potential& p, double energy, const UnitSystem& units) {
  const WaveNumber k = wavevector(energy, p.v_right(), units);
  if (!(energy > p.v_right())) {
    throw DomainError(fmt::format("E = {} eV does not exceed V_III = {} eV: no transmitted wave", energy,
                                  p.v_right()));
  }
  return outgoing_wave(k.value, p.length());
}

Trajectory propagate(const PotentialFn& potential, double energy, double x_from, double x_to, WaveState start,
                     const IntegrationSettings& settings, const UnitSystem& units) {
  settings.validate();
  units.validate();
  if (!(x_from != x_to) || !std::isfinite(x_from) || !std::isfinite(x_to)) {
    throw std::invalid_argument("integration interval must be finite and non-empty");
  }
  const double inv_c2m = 1.0 / units.hbar2_over_2m;
  Trajectory t = settings.method == Method::rk4
                     ? run_rk4(potential, energy, x_from, x_to, start, settings.steps, settings.record_trajectory,
                               inv_c2m)
                     : run_numerov(potential, energy, x_from, x_to, start, settings.steps,
                                   settings.record_trajectory, inv_c2m);
  t.low_resolution = settings.low_resolution();
  return t;
}

Trajectory integrate_backward(const Potential& p, double energy, const IntegrationSettings& settings,
                              const UnitSystem& units) {
  return integrate_backward(p, energy, settings, units, initial_conditions(p, energy, units));
}

Trajectory integrate_backward(const Potential& p, double energy, const IntegrationSettings& settings,
                              const UnitSystem& units, WaveState at_right) {
  return propagate([&p](double x) { return p.evaluate(x); }, energy, p.length(), 0.0, at_right, settings,
                   units);
}

const char* to_string(Method m) noexcept { return m == Method::rk4 ? "rk4" : "numerov"; }

}  // namespace barrierscope
