#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "barrierscope/cli.hpp"

namespace barrierscope::cli {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string{}; }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json complex_json(const cplx& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json wave_number_json(const WaveNumber& k) { return {{"value", k.value}, {"regime", to_string(k.regime)}}; }

const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

const char* solver_flag(SolverKind k) {
  switch (k) {
    case SolverKind::backward: return "backward";
    case SolverKind::transfer_matrix: return "tmm";
    case SolverKind::wkb: return "wkb";
  }
  return "?";
}

json config_json(const RunConfig& c) {
  json j{{"command", to_string(c.command)},
         {"potential", c.potential_source},
         {"solver", solver_flag(c.solver)},
         {"method", to_string(c.method)},
         {"steps", c.steps},
         {"slices", c.slices},
         {"quad_points", c.quad_points},
         {"energy", opt_json(c.energy)},
         {"emin", opt_json(c.e_min)},
         {"emax", opt_json(c.e_max)},
         {"points", c.point_count()},
         {"format", format_name(c.format)}};
  if (c.command == Command::compare) {
    j["steps_list"] = c.compare_steps;
    j["slices_list"] = c.compare_slices;
    j["reference_steps"] = c.reference_steps;
  }
  if (c.command == Command::resonances) j["hbar_omega"] = opt_json(c.hbar_omega);
  if (c.command == Command::eigen) {
    j["level"] = c.level;
    j["curvature"] = opt_json(c.curvature);
    j["center"] = opt_json(c.center);
  }
  return j;
}

std::string escape_line(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '\n') {
      out += "\\n";
    } else if (ch != '\r') {
      out += ch;
    }
  }
  return out;
}

std::string csv_preamble(const RunConfig& c) {
  std::string out = "# barrierscope v1\n";
  const json config = config_json(c);
  for (const auto& [key, value] : config.items()) {
    out += fmt::format("# {}={}\n", key, value.is_string() ? escape_line(value.get<std::string>()) : value.dump());
  }
  return out;
}

json failures_json(const std::vector<SweepFailure>& failures) {
  json arr = json::array();
  for (const auto& f : failures) arr.push_back({{"index", f.index}, {"energy", f.energy}, {"message", f.message}});
  return arr;
}

json peak_json(const ResonancePeak& p) {
  return {{"E_peak", p.energy},
          {"T_peak", p.transmission},
          {"fwhm", opt_json(p.fwhm)},
          {"n", p.n ? json(*p.n) : json(nullptr)},
          {"E_eigen", opt_json(p.eigen_energy)},
          {"deviation", opt_json(p.deviation)}};
}

std::string wave_csv(const std::vector<double>& xs, const std::vector<double>& re, const std::vector<double>& im,
                     const std::vector<double>& density) {
  std::string out = "x_nm,re_psi,im_psi,density\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += fmt::format("{},{},{},{}\n", num(xs[i]), num(re[i]), num(im[i]), num(density[i]));
  }
  return out;
}

struct Document {
  json results;
  json diagnostics = json::object();
  std::string csv;
};

Document build(const TransmitResult& r) {
  const auto& s = r.solution;
  Document d;
  d.results = {{"energy", s.energy},
               {"T", s.T},
               {"R", s.R},
               {"k_in", wave_number_json(s.k_in)},
               {"k_out", wave_number_json(s.k_out)},
               {"solver", to_string(s.solver)},
               {"resolution", s.resolution},
               {"channel", to_string(s.channel)}};
  if (s.amplitudes) {
    d.results["A"] = complex_json(s.amplitudes->A);
    d.results["B"] = complex_json(s.amplitudes->B);
    d.results["F"] = complex_json(s.amplitudes->F);
  }
  d.diagnostics = {{"unitarity_residual", s.T + s.R - 1.0}, {"low_resolution", s.low_resolution}};
  d.csv = "energy_eV,T,R,re_A,im_A,re_B,im_B\n";
  if (s.amplitudes) {
    d.csv += fmt::format("{},{},{},{},{},{},{}\n", num(s.energy), num(s.T), num(s.R), num(s.amplitudes->A.real()),
                         num(s.amplitudes->A.imag()), num(s.amplitudes->B.real()), num(s.amplitudes->B.imag()));
  } else {
    d.csv += fmt::format("{},{},{},,,,\n", num(s.energy), num(s.T), num(s.R));
  }
  return d;
}

Document build(const SweepResult& r) {
  const auto& c = r.curve;
  Document d;
  d.results = {{"solver", to_string(c.solver)}, {"resolution", c.resolution}, {"energies", c.energies}, {"T", c.T}};
  d.diagnostics = {{"failures", failures_json(c.failures)}};
  d.csv = "energy_eV,T\n";
  for (std::size_t i = 0; i < c.energies.size(); ++i) d.csv += fmt::format("{},{}\n", num(c.energies[i]), num(c.T[i]));
  return d;
}

Document build(const ResonanceResult& r) {
  Document d;
  json peaks = json::array();
  for (const auto& p : r.peaks) peaks.push_back(peak_json(p));
  d.results = {{"peaks", peaks},
               {"hbar_omega", opt_json(r.hbar_omega)},
               {"curve", {{"energies", r.curve.energies}, {"T", r.curve.T}}}};
  d.diagnostics = {{"failures", failures_json(r.curve.failures)}, {"curve_points", r.curve.energies.size()}};
  d.csv = "E_peak_eV,T_peak,fwhm_eV,n,E_eigen_eV,deviation\n";
  for (const auto& p : r.peaks) {
    d.csv += fmt::format("{},{},{},{},{},{}\n", num(p.energy), num(p.transmission), opt_num(p.fwhm),
                         p.n ? std::to_string(*p.n) : std::string{}, opt_num(p.eigen_energy), opt_num(p.deviation));
  }
  return d;
}

Document build(const WavefunctionResult& r) {
  const auto& t = *r.solution.trajectory;
  std::vector<double> re;
  std::vector<double> im;
  for (const auto& z : t.psi) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  Document d;
  d.results = {{"energy", r.solution.energy}, {"T", r.solution.T}, {"R", r.solution.R},
               {"x_nm", t.xs},  {"re_psi", re},      {"im_psi", im},
               {"density", r.density}};
  d.diagnostics = {{"low_resolution", r.solution.low_resolution}};
  d.csv = wave_csv(t.xs, re, im, r.density);
  return d;
}

Document build(const CompareResult& r) {
  Document d;
  json series = json::array();
  for (const auto& s : r.series) {
    series.push_back({{"solver", to_string(s.solver)},
                      {"resolution", s.resolution},
                      {"T", s.T},
                      {"max_abs_error", s.max_abs_error}});
  }
  d.results = {{"energies", r.energies},
               {"reference", {{"solver", "backward"}, {"steps", r.reference_steps}, {"T", r.reference}}},
               {"series", series}};
  d.csv = "energy_eV,T_reference";
  for (const auto& s : r.series) {
    d.csv += fmt::format(",{}_{}", s.solver == SolverKind::backward ? "backward" : "tmm", s.resolution);
  }
  d.csv += '\n';
  for (std::size_t i = 0; i < r.energies.size(); ++i) {
    d.csv += num(r.energies[i]) + "," + num(r.reference[i]);
    for (const auto& s : r.series) d.csv += "," + num(s.T[i]);
    d.csv += '\n';
  }
  return d;
}

Document build(const EigenResult& r) {
  Document d;
  d.results = {{"n", r.state.n},
               {"energy", r.state.energy},
               {"curvature", r.well.curvature},
               {"center", r.well.center},
               {"hbar_omega", r.hbar_omega},
               {"x_nm", r.state.xs},
               {"psi", r.state.psi},
               {"density", r.state.density}};
  d.diagnostics = {{"nodes", count_nodes(r.state.psi)}};
  d.csv = wave_csv(r.state.xs, r.state.psi, std::vector<double>(r.state.xs.size(), 0.0), r.state.density);
  return d;
}

}  // namespace

std::string serialize(const RunConfig& config, const CommandResult& result) {
  const Document doc = std::visit([](const auto& r) { return build(r); }, result);
  if (config.format == OutputFormat::csv) return csv_preamble(config) + doc.csv;
  const json j{{"v", 1}, {"config", config_json(config)}, {"results", doc.results}, {"diagnostics", doc.diagnostics}};
  return j.dump(2) + "\n";
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", tmp.string()));
    out << contents;
    out.flush();
    if (!out) throw IoError(fmt::format("failed writing '{}'", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(fmt::format("cannot move output into place at '{}'", path));
  }
}

}  // namespace barrierscope::cli
