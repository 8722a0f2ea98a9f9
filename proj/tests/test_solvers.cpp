#include <cmath>

#include "barrierscope/errors.hpp"
#include "barrierscope/solvers.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace barrierscope;

namespace {

IntegrationSettings numerov(int steps) {
  IntegrationSettings s;
  s.method = Method::numerov;
  s.steps = steps;
  return s;
}

}  // namespace

TEST_CASE("empty region transmits fully") {
  const Potential unit = parse_potential("on [0,1]: 0");
  const ScatteringSolution s = solve_backward(unit, 1.0);
  CHECK(std::abs(s.T - 1.0) < 1e-10);
  CHECK(s.R < 1e-10);
  REQUIRE(s.amplitudes);
  CHECK(std::abs(s.amplitudes->B) < 1e-10);
  CHECK(std::abs(s.amplitudes->F) == 1.0);

  const Potential empty = parse_potential("on [0,2]: 0");
  for (double e : {0.05, 1.0, 9.0}) {
    // RK4 carries a small phase error across many wavelengths.
    CHECK(std::abs(solve_backward(empty, e).T - 1.0) < 1e-8);
    CHECK(std::abs(solve_backward(empty, e, numerov(3)).T - 1.0) < 1e-12);
    for (int slices : {1, 10, 1000}) CHECK(std::abs(solve_transfer_matrix(empty, e, slices).T - 1.0) < 1e-12);
    CHECK(solve_wkb(empty, e).T == 1.0);
  }
}

TEST_CASE("square barrier tunneling") {
  const Potential square = builtin_square(1.0, 1.0);
  const double exact = oracle::rectangular_T(1.0, 1.0, 0.5);
  CHECK(exact == doctest::Approx(oracle::square_T).epsilon(1e-13));

  const ScatteringSolution rk = solve_backward(square, 0.5);
  CHECK(rk.T == doctest::Approx(0.0028501).epsilon(1e-4));
  CHECK(rk.T == doctest::Approx(exact).epsilon(1e-8));
  CHECK(rk.T + rk.R == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rk.solver == SolverKind::backward);
  CHECK(rk.resolution == kDefaultSteps);

  CHECK(solve_backward(square, 0.5, numerov(2000)).T == doctest::Approx(exact).epsilon(1e-8));
  CHECK(solve_transfer_matrix(square, 0.5, 1).T == doctest::Approx(exact).epsilon(1e-12));
  CHECK(solve_transfer_matrix(square, 0.5, 1000).T == doctest::Approx(exact).epsilon(1e-10));

  const ScatteringSolution w = solve_wkb(square, 0.5);
  CHECK(w.T == doctest::Approx(oracle::square_T_wkb).epsilon(1e-10));
  CHECK(w.R == doctest::Approx(1.0 - w.T).epsilon(1e-15));
  CHECK_FALSE(w.amplitudes);
  CHECK(w.T < rk.T);
}

TEST_CASE("above-barrier square transmission") {
  const Potential square = builtin_square(1.0, 1.0);
  for (double e : {1.2, 2.0, 3.3}) {
    const double exact = oracle::rectangular_T_above(1.0, 1.0, e);
    CHECK(solve_backward(square, e).T == doctest::Approx(exact).epsilon(1e-8));
    CHECK(solve_transfer_matrix(square, e, 1).T == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("potential step flux factor") {
  const Potential step = parse_potential("right: 0.6\non [0,1]: 0.6");
  const ScatteringSolution s = solve_backward(step, 1.0);
  CHECK(s.T == doctest::Approx(oracle::step_T).epsilon(1e-9));
  CHECK(s.T + s.R == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.k_out.value < s.k_in.value);
  CHECK(solve_transfer_matrix(step, 1.0, 3).T == doctest::Approx(oracle::step_T).epsilon(1e-12));
}

TEST_CASE("parabolic barrier") {
  const Potential p = builtin_parabolic();
  const ScatteringSolution s = solve_backward(p, 7.5);
  CHECK(s.T > 0.0);
  CHECK(s.T < 1.0);
  CHECK(s.T + s.R == doctest::Approx(1.0).epsilon(1e-10));

  const double backward = solve_backward(p, 5.0).T;
  const double tmm = solve_transfer_matrix(p, 5.0).T;
  CHECK(std::abs(tmm - backward) <= 1e-4 * backward);
}

TEST_CASE("WKB on the parabola") {
  const Potential p = builtin_parabolic();
  const auto pieces = forbidden_intervals(p, 5.0);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].start == 0.0);
  CHECK(pieces[0].end == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(pieces[1].start == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-12));
  CHECK(pieces[1].end == 2.0);

  const ScatteringSolution w = solve_wkb(p, 5.0);
  CHECK(w.T == doctest::Approx(std::exp(-2.0 * oracle::parabola_wkb_action_5ev)).epsilon(1e-8));
  CHECK(solve_wkb(p, 10.5).T == 1.0);
  CHECK(solve_wkb(builtin_square(1.0, 1.0), 1.5).T == 1.0);
}

TEST_CASE("unitarity across energies") {
  const Potential p = builtin_parabolic();
  for (int i = 0; i < 100; ++i) {
    const double e = 0.05 + 9.9 * i / 99.0;
    const ScatteringSolution s = solve_backward(p, e);
    CHECK(std::abs(s.T + s.R - 1.0) <= 1e-6);
    CHECK(s.T >= 0.0);
    CHECK(s.R >= 0.0);
    const ScatteringSolution t = solve_transfer_matrix(p, e);
    CHECK(std::abs(t.T + t.R - 1.0) <= 1e-6);
  }
}

TEST_CASE("reciprocity under mirroring") {
  const Potential smooth = parse_potential("on [0,2]: 6*exp(-((x-0.6)/0.25)^2) + 3*exp(-((x-1.5)/0.2)^2)");
  const Potential tilted = parse_potential("left: 0\nright: 0.4\non [0,1]: 2 - x + x^3");
  for (const Potential& p : {smooth, tilted}) {
    const Potential m = p.mirrored();
    for (double e : {0.8, 2.0, 3.5, 6.5, 9.5}) {
      const double forward = solve_backward(p, e).T;
      CHECK(solve_backward(m, e).T == doctest::Approx(forward).epsilon(1e-8));
      CHECK(solve_backward(m, e, numerov(2000)).T == doctest::Approx(forward).epsilon(1e-8));
      CHECK(solve_transfer_matrix(p, e).T == doctest::Approx(forward).epsilon(1e-5));
    }
  }
  // Midpoint slabs map onto each other under mirroring, so the slab method
  // is reciprocal even across jumps.
  const Potential arb = builtin_arbitrary();
  for (double e : {0.5, 2.0, 3.5, 6.0, 9.5, 14.0}) {
    CHECK(solve_transfer_matrix(arb.mirrored(), e).T ==
          doctest::Approx(solve_transfer_matrix(arb, e).T).epsilon(1e-8));
  }
}

TEST_CASE("jumps cost the integrators first-order accuracy") {
  // V is sampled as-is at segment boundaries, so mirrored and unmirrored
  // results differ at O(h) and close the gap as the step shrinks.
  const Potential arb = builtin_arbitrary();
  const Potential m = arb.mirrored();
  IntegrationSettings s;
  double previous = INFINITY;
  for (int steps : {1000, 2000, 4000, 8000}) {
    s.steps = steps;
    const double gap = std::abs(solve_backward(m, 6.0, s).T - solve_backward(arb, 6.0, s).T);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("closed outgoing channel and invalid incidence") {
  const Potential p = parse_potential("right: 2\non [0,1]: 1");
  const ScatteringSolution s = solve_backward(p, 1.5);
  CHECK(s.channel == Channel::closed);
  CHECK(s.T == 0.0);
  CHECK(s.R == 1.0);
  CHECK(solve_transfer_matrix(p, 1.5).channel == Channel::closed);
  CHECK(solve_wkb(p, 1.5).T == 0.0);

  const Potential raised = parse_potential("left: 1\non [0,1]: 1");
  CHECK_THROWS_AS(solve_backward(raised, 0.5), InvalidIncidence);
  CHECK_THROWS_AS(solve_transfer_matrix(raised, 1.0), InvalidIncidence);
  CHECK_THROWS_AS(solve_wkb(raised, 0.2), InvalidIncidence);
}

TEST_CASE("dispatcher and low resolution flag") {
  const Potential p = builtin_parabolic();
  SolverChoice choice;
  choice.kind = SolverKind::transfer_matrix;
  choice.resolution = 200;
  const ScatteringSolution s = solve(p, 3.0, choice);
  CHECK(s.solver == SolverKind::transfer_matrix);
  CHECK(s.resolution == 200);

  choice.kind = SolverKind::backward;
  choice.resolution = 4;
  choice.record_trajectory = true;
  const ScatteringSolution low = solve(p, 3.0, choice);
  CHECK(low.low_resolution);
  REQUIRE(low.trajectory);
  CHECK(low.trajectory->size() == 5);

  CHECK_THROWS_AS(solve_transfer_matrix(p, 3.0, 0), std::invalid_argument);
}
