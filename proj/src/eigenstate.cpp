#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "barrierscope/analysis.hpp"
#include "barrierscope/errors.hpp"

namespace barrierscope {

namespace {

constexpr double kEigenTolerance = 1e-8;  // eV
constexpr double kTailWidths = 6.0;       // sigma beyond the classical turning point

struct ShootingDomain {
  double x_min;
  double x_max;
};

ShootingDomain domain_for(const ParabolicWell& well, int n, const UnitSystem& units) {
  const double hbar_omega = harmonic_omega_from_parabola(well.curvature, units);
  // sigma^2 = hbar / (m omega) = 2 (hbar^2/2m) / (hbar omega)
  const double sigma = std::sqrt(2.0 * units.hbar2_over_2m / hbar_omega);
  const double half_width = (std::sqrt(2.0 * n + 1.0) + kTailWidths) * sigma;
  return {well.center - half_width, well.center + half_width};
}

// Decaying tail data at x: psi = 1, psi' = +kappa (left tail) or -kappa (right tail).
WaveState tail_start(const PotentialFn& v, double x, double energy, double direction, const UnitSystem& units) {
  const double kappa = std::sqrt(std::max(0.0, v(x) - energy) / units.hbar2_over_2m);
  return {1.0, direction * kappa};
}

}  // namespace

std::pair<double, double> harmonic_bracket(const ParabolicWell& well, int n, const UnitSystem& units) {
  if (n < 0) throw DomainError("level index must be nonnegative");
  const double hbar_omega = harmonic_omega_from_parabola(well.curvature, units);
  const double level = (n + 0.5) * hbar_omega;
  return {level - 0.4 * hbar_omega, level + 0.4 * hbar_omega};
}

BoundState shoot_eigenstate(const ParabolicWell& well, int n, std::pair<double, double> bracket,
                            const UnitSystem& units, int steps) {
  if (n < 0) throw DomainError("level index must be nonnegative");
  const auto [x_min, x_max] = domain_for(well, n, units);
  const PotentialFn v = [well](double x) { return well.curvature * (x - well.center) * (x - well.center); };
  const IntegrationSettings settings{Method::rk4, steps, false};

  auto mismatch = [&](double energy) {
    const Trajectory t =
        propagate(v, energy, x_min, x_max, tail_start(v, x_min, energy, +1.0, units), settings, units);
    return t.back().psi.real();
  };

  double lo = std::min(bracket.first, bracket.second);
  double hi = std::max(bracket.first, bracket.second);
  double m_lo = mismatch(lo);
  const double m_hi = mismatch(hi);
  if ((m_lo > 0.0) == (m_hi > 0.0)) {
    throw BracketError(fmt::format("shooting mismatch does not change sign on [{}, {}] eV", lo, hi));
  }
  while (hi - lo > kEigenTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double m_mid = mismatch(mid);
    if ((m_mid > 0.0) == (m_lo > 0.0)) {
      lo = mid;
      m_lo = m_mid;
    } else {
      hi = mid;
    }
  }
  const double energy = 0.5 * (lo + hi);

  // Output eigenfunction: decaying solutions from both tails joined at the
  // right classical turning point, which keeps the divergent tail out.
  const double turning = well.center + std::sqrt(energy / well.curvature);
  const double h = (x_max - x_min) / steps;
  const int join = std::clamp(static_cast<int>(std::lround((turning - x_min) / h)), 1, steps - 1);
  const double x_join = x_min + h * join;
  const Trajectory left = propagate(v, energy, x_min, x_join, tail_start(v, x_min, energy, +1.0, units),
                                    {Method::rk4, join, true}, units);
  const Trajectory right = propagate(v, energy, x_max, x_join, tail_start(v, x_max, energy, -1.0, units),
                                     {Method::rk4, steps - join, true}, units);
  const double scale = left.back().psi.real() / right.front().psi.real();

  BoundState state;
  state.n = n;
  state.energy = energy;
  for (std::size_t i = 0; i < left.size(); ++i) {
    state.xs.push_back(left.xs[i]);
    state.psi.push_back(left.psi[i].real());
  }
  for (std::size_t i = 1; i < right.size(); ++i) {
    state.xs.push_back(right.xs[i]);
    state.psi.push_back(scale * right.psi[i].real());
  }
  double peak = 0.0;
  for (double p : state.psi) peak = std::max(peak, std::abs(p));
  for (auto& p : state.psi) p /= peak;
  state.density.reserve(state.psi.size());
  for (double p : state.psi) state.density.push_back(p * p);
  return state;
}

}  // namespace barrierscope

namespace barrierscope {

std::optional<ParabolicWell> parabolic_well_of(const Potential& p) {
  const auto* first = std::get_if<PolynomialForm>(&p.segments().front().form);
  if (first == nullptr) return std::nullopt;
  std::vector<double> c = first->coefficients;
  for (const auto& seg : p.segments()) {
    const auto* poly = std::get_if<PolynomialForm>(&seg.form);
    if (poly == nullptr || poly->coefficients != c) return std::nullopt;
  }
  while (c.size() > 3 && c.back() == 0.0) c.pop_back();
  if (c.size() != 3 || !(c[2] > 0.0)) return std::nullopt;
  return ParabolicWell{c[2], -c[1] / (2.0 * c[2])};
}

}  // namespace barrierscope
