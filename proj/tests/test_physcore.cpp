#include <cmath>

#include "barrierscope/errors.hpp"
#include "barrierscope/physcore.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace barrierscope;

TEST_CASE("electron hbar^2/2m matches CODATA evaluation") {
  const UnitSystem u = UnitSystem::electron();
  CHECK(u.hbar2_over_2m == doctest::Approx(0.0380998).epsilon(1e-4));
  CHECK(u.hbar2_over_2m == doctest::Approx(oracle::hbar2_over_2m).epsilon(1e-14));
  CHECK(u.mass_label == "electron");
  CHECK_NOTHROW(u.validate());
}

TEST_CASE("effective mass rescales hbar^2/2m") {
  const UnitSystem u = UnitSystem::effective_mass(0.067);
  CHECK(u.hbar2_over_2m == doctest::Approx(oracle::hbar2_over_2m / 0.067).epsilon(1e-14));
  CHECK_THROWS_AS(UnitSystem::effective_mass(0.0), DomainError);
  CHECK_THROWS_AS((UnitSystem{-1.0, "bad"}.validate()), DomainError);
}

TEST_CASE("wavevector examples") {
  const WaveNumber k = wavevector(1.0, 0.0);
  CHECK(k.value == doctest::Approx(5.1232).epsilon(1e-4));
  CHECK(k.value == doctest::Approx(oracle::k_one_ev).epsilon(1e-14));
  CHECK(k.regime == Regime::propagating);

  for (double v : {-3.0, 0.0, 2.5, 10.0}) {
    const WaveNumber at = wavevector(v, v);
    CHECK(at.value == 0.0);
    CHECK(at.propagating());
  }

  const WaveNumber kappa = wavevector(0.5, 1.0);
  CHECK(kappa.value == doctest::Approx(3.6226).epsilon(1e-4));
  CHECK(kappa.value == doctest::Approx(oracle::kappa_half_under_one).epsilon(1e-14));
  CHECK(kappa.regime == Regime::evanescent);
}

TEST_CASE("wavevector depends only on E - V and grows with E") {
  for (double e : {0.1, 0.7, 3.0, 12.0}) {
    for (double v : {0.0, 0.4, 5.0}) {
      for (double shift : {-2.0, 0.25, 7.0}) {
        const WaveNumber a = wavevector(e, v);
        const WaveNumber b = wavevector(e + shift, v + shift);
        CHECK(a.regime == b.regime);
        CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
      }
    }
  }
  double previous = -1.0;
  for (double e = 1.0; e < 20.0; e += 0.37) {
    const double k = wavevector(e, 1.0).value;
    CHECK(k >= previous);
    previous = k;
  }
}
