#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "barrierscope/cli.hpp"
#include "barrierscope/errors.hpp"

namespace barrierscope::cli {

namespace {

const std::map<std::string, Command> kCommands{
    {"transmit", Command::transmit}, {"sweep", Command::sweep},     {"resonances", Command::resonances},
    {"wavefunction", Command::wavefunction}, {"compare", Command::compare}, {"eigen", Command::eigen},
};
const std::map<std::string, SolverKind> kSolvers{
    {"backward", SolverKind::backward}, {"tmm", SolverKind::transfer_matrix}, {"wkb", SolverKind::wkb}};
const std::map<std::string, Method> kMethods{{"rk4", Method::rk4}, {"numerov", Method::numerov}};
const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};

constexpr const char* kFooter = R"(Physics:
  k = sqrt(2m(E - V)) / hbar, evaluated as sqrt((E - V) / (hbar^2/2m)) with
  hbar^2/2m = 0.0380998 eV nm^2 for the electron. (The form 2m^2/hbar^2 seen
  in some write-ups is dimensionally inconsistent and is not used.)
  T = (k_III / k_I) |F / A|^2. Energies in eV, positions in nm.

Potentials:
  --potential builtin:parabola | builtin:square | builtin:double_barrier |
              builtin:arbitrary | <file> | '<inline DSL text>'
  The 'arbitrary' built-in is a non-canonical demonstration barrier.

Exit codes: 0 ok, 2 config/parse error, 3 numerical failure, 4 I/O error.
)";

}  // namespace

void RunConfig::validate() const {
  const bool single = command == Command::transmit || command == Command::wavefunction;
  const bool ranged = command == Command::sweep || command == Command::resonances || command == Command::compare;
  if (single) {
    if (!energy) throw ConfigError(fmt::format("'{}' needs --energy", to_string(command)));
    if (e_min || e_max) throw ConfigError(fmt::format("'{}' takes --energy, not --emin/--emax", to_string(command)));
  }
  if (ranged) {
    if (!e_min || !e_max) throw ConfigError(fmt::format("'{}' needs --emin and --emax", to_string(command)));
    if (energy) throw ConfigError(fmt::format("'{}' takes --emin/--emax, not --energy", to_string(command)));
    if (!(*e_max > *e_min)) throw ConfigError("--emax must exceed --emin");
    if (point_count() < (command == Command::resonances ? 3 : 2)) throw ConfigError("--points too small");
  }
  if (command == Command::wavefunction && solver != SolverKind::backward) {
    throw ConfigError("'wavefunction' requires --solver backward");
  }
  if (steps < 1 || slices < 1 || quad_points < 2 || reference_steps < 1) {
    throw ConfigError("resolutions must be positive (quad points >= 2)");
  }
  if (threads < 1) throw ConfigError("--threads must be >= 1");
  if (command == Command::eigen && level < 0) throw ConfigError("--level must be >= 0");
  for (int s : compare_steps) {
    if (s < 1) throw ConfigError("--steps-list entries must be positive");
  }
  for (int s : compare_slices) {
    if (s < 1) throw ConfigError("--slices-list entries must be positive");
  }
}

int RunConfig::resolution() const {
  switch (solver) {
    case SolverKind::backward: return steps;
    case SolverKind::transfer_matrix: return slices;
    case SolverKind::wkb: return quad_points;
  }
  return steps;
}

int RunConfig::point_count() const {
  if (points) return *points;
  return command == Command::resonances ? 2000 : 200;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::string* help_text) {
  RunConfig cfg;
  CLI::App app{"barrierscope: transmission through one-dimensional potential barriers", "barrierscope"};
  app.footer(kFooter);
  app.set_config("--config", "", "Read options from a 'key = value' config file; flags override it");

  std::string command;
  app.add_option("command", command, "transmit | sweep | resonances | wavefunction | compare | eigen")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--potential", cfg.potential_source, "builtin:<name>, a DSL file, or inline DSL text")
      ->capture_default_str();
  app.add_option("--solver", cfg.solver, "backward | tmm | wkb")
      ->transform(CLI::CheckedTransformer(kSolvers, CLI::ignore_case));
  app.add_option("--method", cfg.method, "rk4 | numerov (backward solver)")
      ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case));
  app.add_option("--steps", cfg.steps, "integration steps (backward solver)")->capture_default_str();
  app.add_option("--slices", cfg.slices, "slab count (transfer-matrix solver)")->capture_default_str();
  app.add_option("--quad-points", cfg.quad_points, "quadrature points (WKB)")->capture_default_str();
  app.add_option("--energy", cfg.energy, "particle energy in eV");
  app.add_option("--emin", cfg.e_min, "sweep start in eV");
  app.add_option("--emax", cfg.e_max, "sweep end in eV");
  app.add_option("--points", cfg.points, "sweep points (default 200; 2000 for resonances)");
  app.add_option("--output", cfg.output, "output file (default: stdout)");
  app.add_option("--format", cfg.format, "csv | json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  auto* threads_opt = app.add_option("--threads", cfg.threads, "worker threads for sweeps");
  app.add_option("--steps-list", cfg.compare_steps, "compare: backward step counts")->delimiter(',');
  app.add_option("--slices-list", cfg.compare_slices, "compare: transfer-matrix slice counts")->delimiter(',');
  app.add_option("--reference-steps", cfg.reference_steps, "compare: reference step count")->capture_default_str();
  app.add_option("--hbar-omega", cfg.hbar_omega, "resonances: level spacing for harmonic matching (eV)");
  app.add_option("--curvature", cfg.curvature, "eigen: well curvature in eV/nm^2");
  app.add_option("--center", cfg.center, "eigen: well center in nm");
  app.add_option("--level", cfg.level, "eigen: level index n")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help_text) *help_text = app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  cfg.command = kCommands.at(command);
  if (threads_opt->count() == 0) {
    if (const char* env = std::getenv("BARRIERSCOPE_THREADS"); env && *env) {
      try {
        std::size_t used = 0;
        cfg.threads = std::stoi(env, &used);
        if (env[used] != '\0') throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("BARRIERSCOPE_THREADS must be an integer, got '{}'", env));
      }
    }
  }
  cfg.validate();
  return cfg;
}

Potential load_potential(const std::string& source) {
  constexpr std::string_view builtin = "builtin:";
  if (source.rfind(builtin, 0) == 0) {
    const std::string name = source.substr(builtin.size());
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError(fmt::format("unknown built-in potential '{}'", name));
    }
    return parse_potential(name);
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream in(source);
    if (!in) throw IoError(fmt::format("cannot read potential file '{}'", source));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_potential(text.str());
  }
  return parse_potential(source);
}

const char* to_string(Command c) noexcept {
  for (const auto& [name, value] : kCommands) {
    if (value == c) return name.c_str();
  }
  return "?";
}

}  // namespace barrierscope::cli
