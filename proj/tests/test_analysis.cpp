#include <algorithm>
#include <cmath>
#include <cstring>

#include "barrierscope/analysis.hpp"
#include "barrierscope/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace barrierscope;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("linspace endpoints") {
  const auto xs = linspace(0.05, 9.95, 100);
  REQUIRE(xs.size() == 100);
  CHECK(xs.front() == 0.05);
  CHECK(xs.back() == 9.95);
  CHECK_THROWS_AS(linspace(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("sweep over an empty region") {
  const Potential empty = parse_potential("on [0,2]: 0");
  const TransmissionCurve c = sweep(empty, 0.1, 5.0, 50, SolverChoice{});
  for (double t : c.T) CHECK(t == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c.failures.empty());
}

TEST_CASE("parabola sweep shows resonance structure") {
  const Potential p = builtin_parabolic();
  const TransmissionCurve c = sweep(p, 0.05, 9.95, 2000, SolverChoice{}, {}, 4);
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < c.T.size(); ++i) {
    if (c.T[i] > c.T[i - 1] && c.T[i] > c.T[i + 1]) ++maxima;
  }
  CHECK(maxima >= 8);
}

TEST_CASE("sweep matches pointwise solves bit for bit") {
  const Potential p = builtin_parabolic();
  const auto energies = linspace(0.2, 9.0, 37);
  for (auto kind : {SolverKind::backward, SolverKind::transfer_matrix, SolverKind::wkb}) {
    SolverChoice choice;
    choice.kind = kind;
    choice.resolution = 500;
    const TransmissionCurve serial = sweep(p, energies, choice);
    const TransmissionCurve parallel = sweep(p, energies, choice, {}, 5);
    for (std::size_t i = 0; i < energies.size(); ++i) {
      CHECK(same_bits(serial.T[i], solve(p, energies[i], choice).T));
      CHECK(same_bits(serial.T[i], parallel.T[i]));
    }
  }
}

TEST_CASE("sweep records failures without aborting") {
  const Potential raised = parse_potential("left: 1\non [0,1]: 1");
  const TransmissionCurve c = sweep(raised, 0.5, 2.0, 4, SolverChoice{});
  REQUIRE(c.failures.size() == 2);
  CHECK(std::isnan(c.T[0]));
  CHECK(std::isfinite(c.T[3]));
}

TEST_CASE("lowest parabola resonance") {
  const Potential p = builtin_parabolic();
  const SolverChoice choice;
  const TransmissionCurve c = sweep(p, 0.05, 9.95, 2000, choice);
  const auto peaks = find_resonances(c, p, choice);
  REQUIRE_FALSE(peaks.empty());
  CHECK(std::abs(peaks.front().energy - 0.616) / 0.616 < 0.02);
  // The ground-state width (~5e-7 eV) is far below the grid spacing.
  CHECK_FALSE(peaks.front().fwhm);
}

TEST_CASE("resonance finder on synthetic curves") {
  SUBCASE("monotone curve has no peaks") {
    TransmissionCurve c;
    c.energies = linspace(0.0, 1.0, 50);
    for (double e : c.energies) c.T.push_back(e * e);
    CHECK(find_resonances(c, [](double e) { return e * e; }).empty());
  }
  SUBCASE("two lorentzians") {
    const auto f = [](double e) {
      return 0.8 / (1 + std::pow((e - 2.0) / 0.05, 2)) + 0.5 / (1 + std::pow((e - 5.0) / 0.1, 2));
    };
    TransmissionCurve c;
    c.energies = linspace(0.0, 8.0, 801);
    for (double e : c.energies) c.T.push_back(f(e));
    const auto peaks = find_resonances(c, f);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].energy == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(peaks[1].energy == doctest::Approx(5.0).epsilon(1e-5));
    CHECK(peaks[0].transmission == doctest::Approx(f(2.0)).epsilon(1e-6));
    REQUIRE(peaks[0].fwhm);
    CHECK(*peaks[0].fwhm == doctest::Approx(0.1).epsilon(0.02));
    REQUIRE(peaks[1].fwhm);
    CHECK(*peaks[1].fwhm == doctest::Approx(0.2).epsilon(0.02));
  }
  SUBCASE("refinement never lowers the grid maximum") {
    const auto f = [](double e) { return std::exp(-std::pow((e - 1.2345) / 0.2, 2)); };
    TransmissionCurve c;
    c.energies = linspace(0.0, 3.0, 31);
    for (double e : c.energies) c.T.push_back(f(e));
    const auto peaks = find_resonances(c, f);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].transmission >= *std::max_element(c.T.begin(), c.T.end()));
    CHECK(peaks[0].energy == doctest::Approx(1.2345).epsilon(1e-5));
  }
  SUBCASE("plateau counts once") {
    TransmissionCurve c;
    c.energies = {0, 1, 2, 3, 4, 5};
    c.T = {0.1, 0.5, 0.5, 0.5, 0.2, 0.1};
    const auto peaks = find_resonances(c, [&](double e) {
      return e >= 1 && e <= 3 ? 0.5 : 0.1;
    });
    CHECK(peaks.size() == 1);
  }
  SUBCASE("peak at the edge of the grid has no width") {
    const auto f = [](double e) { return 1.0 / (1 + std::pow((e - 0.3) / 0.5, 2)); };
    TransmissionCurve c;
    c.energies = linspace(0.0, 10.0, 101);
    for (double e : c.energies) c.T.push_back(f(e));
    const auto peaks = find_resonances(c, f);
    REQUIRE(peaks.size() == 1);
    CHECK_FALSE(peaks[0].fwhm);
  }
}

TEST_CASE("harmonic comparison") {
  CHECK(harmonic_omega_from_parabola(10.0) == doctest::Approx(oracle::hbar_omega_curv10).epsilon(1e-13));
  CHECK(harmonic_omega_from_parabola(10.0) == doctest::Approx(1.2345).epsilon(1e-4));
  CHECK_THROWS_AS(harmonic_omega_from_parabola(0.0), DomainError);

  std::vector<ResonancePeak> peaks(3);
  peaks[0].energy = 0.6;
  peaks[1].energy = 1.9;
  peaks[2].energy = 3.5;
  const auto matched = compare_to_harmonic(peaks, 1.0);
  CHECK(*matched[0].n == 0);
  CHECK(*matched[1].n == 1);
  CHECK(*matched[2].n == 2);
  CHECK(*matched[2].eigen_energy == 2.5);
  CHECK(*matched[2].deviation == doctest::Approx(0.4));
  CHECK(*matched[0].deviation == doctest::Approx(0.2));
}

TEST_CASE("shooting eigenstates of the parabolic well") {
  const ParabolicWell well;
  const double w = harmonic_omega_from_parabola(well.curvature);
  const BoundState g = shoot_eigenstate(well, 0, harmonic_bracket(well, 0));
  CHECK(g.energy == doctest::Approx(w / 2).epsilon(1e-6));
  CHECK(count_nodes(g.psi) == 0);

  const BoundState five = shoot_eigenstate(well, 5, harmonic_bracket(well, 5));
  CHECK(five.energy / g.energy == doctest::Approx(11.0).epsilon(1e-4));
  CHECK(count_nodes(five.psi) == 5);
  CHECK(*std::max_element(five.density.begin(), five.density.end()) == doctest::Approx(1.0));

  const auto maxima = local_maxima(five.xs, five.density);
  CHECK(maxima.size() == 6);
  for (std::size_t i = 0; i < maxima.size(); ++i) {
    CHECK(std::abs(maxima[i] - (2 * well.center - maxima[maxima.size() - 1 - i])) < 1e-3);
  }

  CHECK_THROWS_AS(shoot_eigenstate(well, 0, {0.01, 0.02}), BracketError);
}

TEST_CASE("density profile") {
  Trajectory t;
  t.xs = {0, 1, 2};
  t.psi = {cplx{1, 1}, cplx{0, 2}, cplx{0.5, 0}};
  t.dpsi = t.psi;
  const auto d = density_profile(t);
  CHECK(d[0] == doctest::Approx(0.5));
  CHECK(d[1] == doctest::Approx(1.0));
  CHECK(d[2] == doctest::Approx(0.0625));
  CHECK_THROWS_AS(density_profile(Trajectory{}), std::invalid_argument);
  Trajectory zero;
  zero.xs = {0, 1};
  zero.psi = {cplx{}, cplx{}};
  zero.dpsi = zero.psi;
  CHECK_THROWS_AS(density_profile(zero), std::invalid_argument);
}

TEST_CASE("scattering density at the n = 5 resonance resembles the bound state") {
  const Potential p = builtin_parabolic();
  const auto well = parabolic_well_of(p);
  REQUIRE(well);
  CHECK(well->curvature == doctest::Approx(10.0));
  CHECK(well->center == doctest::Approx(1.0));
  CHECK_FALSE(parabolic_well_of(builtin_square(1, 1)));

  const BoundState bound = shoot_eigenstate(*well, 5, harmonic_bracket(*well, 5));
  const ResonanceScan scan = scan_resonances(p, 6.0, 7.5, 300, SolverChoice{});
  REQUIRE(scan.peaks.size() == 1);
  SolverChoice choice;
  choice.record_trajectory = true;
  const ScatteringSolution s = solve(p, scan.peaks[0].energy, choice);
  const auto density = density_profile(*s.trajectory);
  const auto scattering_peaks = local_maxima(s.trajectory->xs, density);
  const auto bound_peaks = local_maxima(bound.xs, bound.density);
  REQUIRE(scattering_peaks.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(scattering_peaks[i] - bound_peaks[i]) < 0.05);
}

TEST_CASE("node counting") {
  const std::vector<double> v{1, 0.5, -0.2, -0.1, 0.0, 0.3, 0.1, -1};
  CHECK(count_nodes(v) == 3);
}
