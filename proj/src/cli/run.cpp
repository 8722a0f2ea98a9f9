#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "barrierscope/cli.hpp"
#include "barrierscope/errors.hpp"

namespace barrierscope::cli {

namespace {

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (std::isnan(d)) return std::nan("");
    worst = std::max(worst, d);
  }
  return worst;
}

CompareResult run_compare(const Potential& p, const RunConfig& cfg, const UnitSystem& units) {
  CompareResult out;
  out.energies = linspace(*cfg.e_min, *cfg.e_max, cfg.point_count());
  out.reference_steps = cfg.reference_steps;
  out.reference =
      sweep(p, out.energies, {SolverKind::backward, cfg.method, cfg.reference_steps}, units, cfg.threads).T;
  auto add = [&](SolverKind kind, int resolution) {
    const auto curve = sweep(p, out.energies, {kind, cfg.method, resolution}, units, cfg.threads);
    out.series.push_back({kind, resolution, curve.T, max_abs_difference(curve.T, out.reference)});
  };
  for (int steps : cfg.compare_steps) add(SolverKind::backward, steps);
  for (int slices : cfg.compare_slices) add(SolverKind::transfer_matrix, slices);
  return out;
}

ParabolicWell well_for(const Potential& p, const RunConfig& cfg) {
  const auto derived = parabolic_well_of(p);
  if (!cfg.curvature && !derived) {
    throw ConfigError("'eigen' needs --curvature (the potential is not a single parabola)");
  }
  ParabolicWell well = derived.value_or(ParabolicWell{});
  if (cfg.curvature) well.curvature = *cfg.curvature;
  if (cfg.center) well.center = *cfg.center;
  return well;
}

}  // namespace

CommandResult execute(const RunConfig& cfg) {
  cfg.validate();
  const Potential p = load_potential(cfg.potential_source);
  const UnitSystem units = UnitSystem::electron();
  const SolverChoice choice{cfg.solver, cfg.method, cfg.resolution(), false};

  switch (cfg.command) {
    case Command::transmit:
      return TransmitResult{solve(p, *cfg.energy, choice, units)};
    case Command::sweep:
      return SweepResult{sweep(p, *cfg.e_min, *cfg.e_max, cfg.point_count(), choice, units, cfg.threads)};
    case Command::resonances: {
      ResonanceScan scan =
          scan_resonances(p, *cfg.e_min, *cfg.e_max, cfg.point_count(), choice, units, cfg.threads);
      ResonanceResult r{std::move(scan.curve), std::move(scan.peaks), cfg.hbar_omega};
      if (!r.hbar_omega) {
        if (const auto well = parabolic_well_of(p)) r.hbar_omega = harmonic_omega_from_parabola(well->curvature, units);
      }
      if (r.hbar_omega) r.peaks = compare_to_harmonic(std::move(r.peaks), *r.hbar_omega);
      return r;
    }
    case Command::wavefunction: {
      SolverChoice traced = choice;
      traced.record_trajectory = true;
      ScatteringSolution s = solve(p, *cfg.energy, traced, units);
      if (!s.trajectory) throw ConfigError("no wavefunction: the transmitted channel is closed at this energy");
      std::vector<double> density = density_profile(*s.trajectory);
      return WavefunctionResult{std::move(s), std::move(density)};
    }
    case Command::compare:
      return run_compare(p, cfg, units);
    case Command::eigen: {
      const ParabolicWell well = well_for(p, cfg);
      const double hbar_omega = harmonic_omega_from_parabola(well.curvature, units);
      return EigenResult{well, hbar_omega,
                         shoot_eigenstate(well, cfg.level, harmonic_bracket(well, cfg.level, units), units)};
    }
  }
  throw ConfigError("unknown command");
}

RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  try {
    const CommandResult result = execute(config);
    out.report = render_report(result);
    std::string doc = serialize(config, result);
    if (config.output.empty()) {
      out.data = std::move(doc);
    } else {
      write_atomically(config.output, doc);
    }
  } catch (const ConfigError& e) {
    out = {kConfigError, {}, {}, fmt::format("config error: {}", e.what())};
  } catch (const ParseError& e) {
    out = {kConfigError, {}, {}, fmt::format("potential parse error: {}", e.what())};
  } catch (const InvalidIncidence& e) {
    out = {kConfigError, {}, {}, fmt::format("invalid energy: {}", e.what())};
  } catch (const NumericalError& e) {
    out = {kNumericalError, {}, {}, fmt::format("numerical failure: {}", e.what())};
  } catch (const IoError& e) {
    out = {kIoError, {}, {}, fmt::format("I/O error: {}", e.what())};
  } catch (const std::domain_error& e) {
    out = {kConfigError, {}, {}, fmt::format("invalid input: {}", e.what())};
  } catch (const std::invalid_argument& e) {
    out = {kConfigError, {}, {}, fmt::format("invalid input: {}", e.what())};
  } catch (const std::exception& e) {
    out = {kNumericalError, {}, {}, fmt::format("error: {}", e.what())};
  }
  return out;
}

}  // namespace barrierscope::cli
