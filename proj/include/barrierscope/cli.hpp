#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "barrierscope/analysis.hpp"
#include "barrierscope/solvers.hpp"

namespace barrierscope::cli {

enum class Command { transmit, sweep, resonances, wavefunction, compare, eigen };
enum class OutputFormat { csv, json };

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::transmit;
  std::string potential_source = "builtin:parabola";
  SolverKind solver = SolverKind::backward;
  Method method = Method::rk4;
  int steps = kDefaultSteps;
  int slices = kDefaultSlices;
  int quad_points = kDefaultQuadPoints;
  std::optional<double> energy;
  std::optional<double> e_min;
  std::optional<double> e_max;
  std::optional<int> points;
  std::string output;  // empty: data document to stdout
  OutputFormat format = OutputFormat::json;
  int threads = 1;

  // compare
  std::vector<int> compare_steps{5, 6, 7, 8, 9, 10, 11, 12, 300};
  std::vector<int> compare_slices{10, 20, 50, 100, 200, 500, 1000};
  int reference_steps = kDefaultSteps;

  // resonances / eigen
  std::optional<double> hbar_omega;
  std::optional<double> curvature;
  std::optional<double> center;
  int level = 0;

  /// Throws ConfigError when the energy options do not fit the command.
  void validate() const;
  int resolution() const;
  int point_count() const;
};

/// Parses argv (flags, optional --config file, BARRIERSCOPE_THREADS).
/// Throws ConfigError; `--help` sets `help_text` and returns nullopt.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::string* help_text = nullptr);

Potential load_potential(const std::string& source);

struct TransmitResult {
  ScatteringSolution solution;
};

struct SweepResult {
  TransmissionCurve curve;
};

struct ResonanceResult {
  TransmissionCurve curve;
  std::vector<ResonancePeak> peaks;
  std::optional<double> hbar_omega;
};

struct WavefunctionResult {
  ScatteringSolution solution;
  std::vector<double> density;
};

struct CompareSeries {
  SolverKind solver;
  int resolution;
  std::vector<double> T;
  double max_abs_error;
};

struct CompareResult {
  std::vector<double> energies;
  int reference_steps;
  std::vector<double> reference;
  std::vector<CompareSeries> series;
};

struct EigenResult {
  ParabolicWell well;
  double hbar_omega;
  BoundState state;
};

using CommandResult =
    std::variant<TransmitResult, SweepResult, ResonanceResult, WavefunctionResult, CompareResult, EigenResult>;

/// Runs the numerics for a validated config without writing anything.
CommandResult execute(const RunConfig& config);

/// Serialised data document (CSV or JSON). Numbers carry 17 significant
/// digits; output is deterministic for a given config.
std::string serialize(const RunConfig& config, const CommandResult& result);

/// Fixed-width human-readable summary, 6 significant digits.
std::string render_report(const CommandResult& result);

/// Writes `contents` to `path` via a temporary file and rename.
void write_atomically(const std::string& path, const std::string& contents);

struct RunOutcome {
  int exit_code = kSuccess;
  std::string report;
  std::string data;   // set when config.output is empty
  std::string error;  // message for stderr
};

/// execute + serialize + write, mapping failures to exit codes.
RunOutcome run(const RunConfig& config);

const char* to_string(Command c) noexcept;

}  // namespace barrierscope::cli
