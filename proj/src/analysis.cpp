#include "barrierscope/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "barrierscope/errors.hpp"

namespace barrierscope {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio

double transmission_at(const Potential& p, double energy, const SolverChoice& choice, const UnitSystem& units) {
  SolverChoice quiet = choice;
  quiet.record_trajectory = false;
  return solve(p, energy, quiet, units).T;
}

// Maximises T on [lo, hi]; returns (E, T) of the best point evaluated.
std::pair<double, double> golden_maximize(const std::function<double(double)>& transmission, double lo, double hi,
                                          const RefineOptions& opt) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = transmission(c);
  double fd = transmission(d);
  for (int it = 0; it < opt.max_iterations && (b - a) > opt.energy_tolerance; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = transmission(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = transmission(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// Energy where the piecewise-linear curve through `pts` crosses `level`,
// walking outward from index `from` in direction `dir`.
std::optional<double> half_crossing(const std::vector<std::pair<double, double>>& pts, std::size_t from, int dir,
                                    double level) {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(from);
  for (;;) {
    const std::ptrdiff_t j = i + dir;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(pts.size())) return std::nullopt;
    const auto [e_in, t_in] = pts[i];
    const auto [e_out, t_out] = pts[j];
    if (std::isnan(t_out)) return std::nullopt;
    if (t_out < level) {
      const double frac = (t_in - level) / (t_in - t_out);
      return e_in + frac * (e_out - e_in);
    }
    i = j;
  }
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument(fmt::format("need at least 2 points, got {}", n));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  out.back() = hi;
  return out;
}

TransmissionCurve sweep(const Potential& p, std::span<const double> energies, const SolverChoice& choice,
                        const UnitSystem& units, int threads) {
  for (std::size_t i = 1; i < energies.size(); ++i) {
    if (!(energies[i] > energies[i - 1])) throw std::invalid_argument("sweep energies must be strictly increasing");
  }
  TransmissionCurve curve;
  curve.energies.assign(energies.begin(), energies.end());
  curve.T.assign(energies.size(), std::numeric_limits<double>::quiet_NaN());
  curve.solver = choice.kind;
  curve.resolution = choice.resolution;

  const std::size_t n = energies.size();
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
  std::vector<std::vector<SweepFailure>> failures(workers);

  auto work = [&](std::size_t worker) {
    for (std::size_t i = worker; i < n; i += workers) {
      try {
        curve.T[i] = transmission_at(p, energies[i], choice, units);
      } catch (const std::exception& e) {
        failures[worker].push_back({i, energies[i], e.what()});
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& f : failures) curve.failures.insert(curve.failures.end(), f.begin(), f.end());
  std::sort(curve.failures.begin(), curve.failures.end(),
            [](const SweepFailure& a, const SweepFailure& b) { return a.index < b.index; });
  return curve;
}

TransmissionCurve sweep(const Potential& p, double e_min, double e_max, int n_points, const SolverChoice& choice,
                        const UnitSystem& units, int threads) {
  if (!(e_max > e_min)) throw std::invalid_argument("sweep needs e_max > e_min");
  const auto grid = linspace(e_min, e_max, n_points);
  return sweep(p, grid, choice, units, threads);
}

std::vector<ResonancePeak> find_resonances(const TransmissionCurve& curve, const Potential& p,
                                           const SolverChoice& choice, const UnitSystem& units,
                                           RefineOptions options) {
  return find_resonances(
      curve, [&](double e) { return transmission_at(p, e, choice, units); }, options);
}

std::vector<ResonancePeak> find_resonances(const TransmissionCurve& curve,
                                           const std::function<double(double)>& transmission,
                                           RefineOptions options) {
  const auto& E = curve.energies;
  const auto& T = curve.T;
  if (E.size() < 3) throw std::invalid_argument("resonance search needs at least 3 curve points");

  std::vector<ResonancePeak> peaks;
  for (std::size_t i = 1; i + 1 < E.size(); ++i) {
    if (std::isnan(T[i]) || std::isnan(T[i - 1]) || !(T[i] > T[i - 1])) continue;
    // Leftmost point of a plateau counts only if the plateau then falls.
    std::size_t j = i + 1;
    while (j < E.size() && T[j] == T[i]) ++j;
    if (j == E.size() || std::isnan(T[j]) || T[j] > T[i]) continue;

    const auto [e_ref, t_ref] = golden_maximize(transmission, E[i - 1], E[j], options);
    ResonancePeak peak;
    if (t_ref >= T[i]) {
      peak.energy = e_ref;
      peak.transmission = t_ref;
    } else {
      peak.energy = E[i];
      peak.transmission = T[i];
    }

    std::vector<std::pair<double, double>> pts;
    pts.reserve(E.size() + 1);
    for (std::size_t k = 0; k < E.size(); ++k) {
      if (E[k] != peak.energy) pts.emplace_back(E[k], T[k]);
    }
    const auto pos = std::lower_bound(pts.begin(), pts.end(), peak.energy,
                                      [](const auto& q, double e) { return q.first < e; });
    const auto at = static_cast<std::size_t>(pos - pts.begin());
    pts.insert(pos, {peak.energy, peak.transmission});
    const double half = 0.5 * peak.transmission;
    // With no neighbour above half height the curve does not resolve the
    // peak and interpolation would only measure the grid spacing.
    const bool resolved = (at > 0 && pts[at - 1].second >= half) || (at + 1 < pts.size() && pts[at + 1].second >= half);
    const auto left = half_crossing(pts, at, -1, half);
    const auto right = half_crossing(pts, at, +1, half);
    if (resolved && left && right && *right > *left) peak.fwhm = *right - *left;
    peaks.push_back(peak);
    i = j - 1;
  }
  return peaks;
}

std::vector<ResonancePeak> compare_to_harmonic(std::vector<ResonancePeak> peaks, double hbar_omega) {
  if (!(hbar_omega > 0.0)) throw DomainError("hbar omega must be positive");
  std::sort(peaks.begin(), peaks.end(),
            [](const ResonancePeak& a, const ResonancePeak& b) { return a.energy < b.energy; });
  int previous = -1;
  for (auto& peak : peaks) {
    int n = previous + 1;
    if (previous < 0) n = std::max(0, static_cast<int>(std::lround(peak.energy / hbar_omega - 0.5)));
    const double level = (n + 0.5) * hbar_omega;
    peak.n = n;
    peak.eigen_energy = level;
    peak.deviation = (peak.energy - level) / level;
    previous = n;
  }
  return peaks;
}

double harmonic_omega_from_parabola(double curvature, const UnitSystem& units) {
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    throw DomainError(fmt::format("parabola curvature must be positive, got {}", curvature));
  }
  return std::sqrt(4.0 * curvature * units.hbar2_over_2m);
}

ResonanceScan scan_resonances(const Potential& p, double e_min, double e_max, int n_points,
                              const SolverChoice& choice, const UnitSystem& units, int threads,
                              RefineOptions options) {
  constexpr int kWindow = 10;
  constexpr int kFineDensity = 100;
  constexpr double kProminence = 10.0;

  const TransmissionCurve coarse = sweep(p, e_min, e_max, n_points, choice, units, threads);
  std::map<double, double> samples;
  for (std::size_t i = 0; i < coarse.energies.size(); ++i) samples[coarse.energies[i]] = coarse.T[i];

  // Refine the coarse intervals on either side of each prominent sample.
  // Only interior points are added, so refined samples never coincide with
  // coarse ones or with each other.
  const auto n = static_cast<std::ptrdiff_t>(coarse.energies.size());
  std::vector<bool> refine(coarse.energies.size(), false);  // interval [e_j, e_{j+1}]
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (std::isnan(coarse.T[i])) continue;
    std::vector<double> window;
    for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(0, i - kWindow); k <= std::min(n - 1, i + kWindow); ++k) {
      if (!std::isnan(coarse.T[k])) window.push_back(coarse.T[k]);
    }
    if (!(coarse.T[i] > kProminence * median(window))) continue;
    if (i > 0) refine[i - 1] = true;
    if (i + 1 < n) refine[i] = true;
  }
  std::vector<double> fine_grid;
  for (std::ptrdiff_t j = 0; j + 1 < n; ++j) {
    if (!refine[j]) continue;
    const double lo = coarse.energies[j];
    const double hi = coarse.energies[j + 1];
    for (int m = 1; m < kFineDensity; ++m) fine_grid.push_back(lo + (hi - lo) * (static_cast<double>(m) / kFineDensity));
  }

  ResonanceScan result;
  result.curve = coarse;
  if (!fine_grid.empty()) {
    const TransmissionCurve fine = sweep(p, fine_grid, choice, units, threads);
    for (std::size_t i = 0; i < fine.energies.size(); ++i) samples[fine.energies[i]] = fine.T[i];
    result.curve.energies.clear();
    result.curve.T.clear();
    for (const auto& [e, t] : samples) {
      result.curve.energies.push_back(e);
      result.curve.T.push_back(t);
    }
    result.curve.failures.clear();
    for (std::size_t i = 0; i < result.curve.energies.size(); ++i) {
      if (std::isnan(result.curve.T[i])) {
        result.curve.failures.push_back({i, result.curve.energies[i], "solve failed"});
      }
    }
    for (const auto& f : coarse.failures) {
      for (auto& g : result.curve.failures) {
        if (g.energy == f.energy) g.message = f.message;
      }
    }
    for (const auto& f : fine.failures) {
      for (auto& g : result.curve.failures) {
        if (g.energy == f.energy) g.message = f.message;
      }
    }
  }
  result.peaks = find_resonances(result.curve, p, choice, units, options);
  return result;
}

std::vector<double> density_profile(const Trajectory& t) {
  if (t.psi.empty()) throw std::invalid_argument("density of an empty trajectory");
  std::vector<double> d(t.psi.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = std::norm(t.psi[i]);
    peak = std::max(peak, d[i]);
  }
  if (!(peak > 0.0)) throw std::invalid_argument("density of an identically zero trajectory");
  for (auto& v : d) v /= peak;
  return d;
}

std::vector<double> local_maxima(std::span<const double> xs, std::span<const double> values) {
  if (xs.size() != values.size()) throw std::invalid_argument("positions and values differ in length");
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
    const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
    const double y0 = values[i - 1], y1 = values[i], y2 = values[i + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    out.push_back(den != 0.0 ? x1 - 0.5 * num / den : x1);
  }
  return out;
}

int count_nodes(std::span<const double> psi) {
  int nodes = 0;
  double last = 0.0;
  for (double v : psi) {
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++nodes;
    last = v;
  }
  return nodes;
}

}  // namespace barrierscope
