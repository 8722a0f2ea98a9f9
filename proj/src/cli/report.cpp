#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "barrierscope/cli.hpp"

namespace barrierscope::cli {

namespace {

std::string g6(double v) { return fmt::format("{:.6g}", v); }

std::string report(const TransmitResult& r) {
  const auto& s = r.solution;
  std::string out = fmt::format("solver      {} (resolution {}){}\n", to_string(s.solver), s.resolution,
                                s.low_resolution ? " [low resolution]" : "");
  out += fmt::format("{:<12}{:>14}\n", "E [eV]", g6(s.energy));
  out += fmt::format("{:<12}{:>14}\n", "T", g6(s.T));
  out += fmt::format("{:<12}{:>14}\n", "R", g6(s.R));
  out += fmt::format("{:<12}{:>14}\n", "T+R-1", g6(s.T + s.R - 1.0));
  if (s.amplitudes) {
    out += fmt::format("{:<12}{:>14}\n", "|A|", g6(std::abs(s.amplitudes->A)));
    out += fmt::format("{:<12}{:>14}\n", "|B|", g6(std::abs(s.amplitudes->B)));
  }
  if (s.channel == Channel::closed) out += "transmitted channel closed (E <= V_III)\n";
  return out;
}

std::string report(const SweepResult& r) {
  const auto& c = r.curve;
  double t_min = INFINITY;
  double t_max = -INFINITY;
  for (double t : c.T) {
    if (std::isnan(t)) continue;
    t_min = std::min(t_min, t);
    t_max = std::max(t_max, t);
  }
  std::string out = fmt::format("{:<12}{:>14}\n", "solver", to_string(c.solver));
  out += fmt::format("{:<12}{:>14}\n", "resolution", c.resolution);
  out += fmt::format("{:<12}{:>14}\n", "points", c.energies.size());
  if (!c.energies.empty()) {
    out += fmt::format("{:<12}{:>14}\n", "E min [eV]", g6(c.energies.front()));
    out += fmt::format("{:<12}{:>14}\n", "E max [eV]", g6(c.energies.back()));
  }
  out += fmt::format("{:<12}{:>14}\n", "T min", g6(t_min));
  out += fmt::format("{:<12}{:>14}\n", "T max", g6(t_max));
  out += fmt::format("{:<12}{:>14}\n", "failures", c.failures.size());
  return out;
}

std::string report(const ResonanceResult& r) {
  if (r.peaks.empty()) return "no resonances found\n";
  std::string out = fmt::format("{:>14}{:>14}{:>14}{:>6}{:>14}\n", "E_peak [eV]", "T_peak", "FWHM [eV]", "n",
                                "deviation");
  for (const auto& p : r.peaks) {
    out += fmt::format("{:>14}{:>14}{:>14}{:>6}{:>14}\n", g6(p.energy), g6(p.transmission),
                       p.fwhm ? g6(*p.fwhm) : "-", p.n ? std::to_string(*p.n) : "-",
                       p.deviation ? g6(*p.deviation) : "-");
  }
  if (r.hbar_omega) out += fmt::format("hbar omega = {} eV\n", g6(*r.hbar_omega));
  return out;
}

std::string report(const WavefunctionResult& r) {
  const auto& t = *r.solution.trajectory;
  std::string out = fmt::format("{:<12}{:>14}\n", "E [eV]", g6(r.solution.energy));
  out += fmt::format("{:<12}{:>14}\n", "T", g6(r.solution.T));
  out += fmt::format("{:<12}{:>14}\n", "R", g6(r.solution.R));
  out += fmt::format("{:<12}{:>14}\n", "samples", t.size());
  const auto peaks = local_maxima(t.xs, r.density);
  out += fmt::format("{:<12}{:>14}\n", "density max", peaks.size());
  return out;
}

std::string report(const CompareResult& r) {
  std::string out = fmt::format("reference: backward solver, {} steps, {} energies\n", r.reference_steps,
                                r.energies.size());
  out += fmt::format("{:<18}{:>12}{:>16}\n", "solver", "resolution", "max |dT|");
  for (const auto& s : r.series) {
    out += fmt::format("{:<18}{:>12}{:>16}\n", to_string(s.solver), s.resolution, g6(s.max_abs_error));
  }
  return out;
}

std::string report(const EigenResult& r) {
  std::string out = fmt::format("{:<16}{:>14}\n", "n", r.state.n);
  out += fmt::format("{:<16}{:>14}\n", "E [eV]", g6(r.state.energy));
  out += fmt::format("{:<16}{:>14}\n", "hbar omega [eV]", g6(r.hbar_omega));
  out += fmt::format("{:<16}{:>14}\n", "(n+1/2) hw", g6((r.state.n + 0.5) * r.hbar_omega));
  out += fmt::format("{:<16}{:>14}\n", "nodes", count_nodes(r.state.psi));
  return out;
}

}  // namespace

std::string render_report(const CommandResult& result) {
  return std::visit([](const auto& r) { return report(r); }, result);
}

}  // namespace barrierscope::cli
