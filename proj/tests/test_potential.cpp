#include <cmath>
#include <string>

#include "barrierscope/errors.hpp"
#include "barrierscope/potential.hpp"
#include "doctest.h"

using namespace barrierscope;

TEST_CASE("builtin parabola values") {
  const Potential p = builtin_parabolic();
  CHECK(p.length() == 2.0);
  CHECK(p(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p(0.0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(p(2.0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(p(0.5) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(p(1.5) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(p.v_left() == 0.0);
  CHECK(p.v_right() == 0.0);
}

TEST_CASE("parse builtin line with parameters") {
  const Potential p = parse_potential("parabola height=10 width=2");
  CHECK(p.length() == 2.0);
  CHECK(p(0.5) == doctest::Approx(2.5).epsilon(1e-12));

  const Potential q = parse_potential("square height=1 width=1 right=0.2");
  CHECK(q(0.3) == 1.0);
  CHECK(q.v_right() == 0.2);
}

TEST_CASE("parse explicit segments") {
  const Potential p = parse_potential("on [0,1): 5");
  CHECK(p.length() == 1.0);
  CHECK(p(0.0) == 5.0);
  CHECK(p(0.5) == 5.0);
  CHECK(p(1.0) == 5.0);

  const Potential two = parse_potential(
      "left: 0.1\n"
      "right = 0.3\n"
      "on [0, 0.5): 4 + 8*x\n"
      "on [0.5, 1]: 2*sin(x)^2 - -1\n");
  CHECK(two.v_left() == 0.1);
  CHECK(two.v_right() == 0.3);
  CHECK(two(0.25) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(two(0.75) == doctest::Approx(2 * std::pow(std::sin(0.75), 2) + 1).epsilon(1e-14));
  CHECK(two.length() == 1.0);
}

TEST_CASE("segment boundaries take the right-hand segment") {
  const Potential p = parse_potential("on [0,1): 1\non [1,2]: 3");
  CHECK(p(1.0) == 3.0);
  CHECK(p(std::nextafter(1.0, 0.0)) == 1.0);
  CHECK(p(2.0) == 3.0);
}

TEST_CASE("unknown identifier reports token and position") {
  try {
    parse_potential("on [0,2): x^2 + bad");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("bad") != std::string::npos);
    CHECK(e.line() == 1);
    CHECK(e.column() == 17);
  }
  try {
    parse_potential("left: 0\n\non [0,2): x^2 + bad");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("coverage errors") {
  CHECK_THROWS_AS(parse_potential("on [0,1): 1\non [1.5,2]: 1"), ParseError);
  CHECK_THROWS_AS(parse_potential("on [0,1.5): 1\non [1,2]: 1"), ParseError);
  CHECK_THROWS_AS(parse_potential("on [0.2,1]: 1"), ParseError);
  CHECK_THROWS_AS(parse_potential("on [1,1]: 1"), ParseError);
  CHECK_THROWS_AS(parse_potential("on [0,2]: 1/(x-1)"), ParseError);
  CHECK_THROWS_AS(parse_potential("on [0,2]: sqrt(x-5)"), ParseError);
  CHECK_THROWS_AS(parse_potential(""), ParseError);
  CHECK_THROWS_AS(parse_potential("bogus [0,1): 1"), ParseError);
  CHECK_THROWS_AS(parse_potential("parabola height=10 colour=red"), ParseError);
  CHECK_THROWS_AS(parse_potential("parabola\non [0,1]: 1"), ParseError);

  try {
    parse_potential("on [0,1): 1\non [1.5,2]: 1");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("gap") != std::string::npos);
  }
}

TEST_CASE("evaluate outside the region is a domain error") {
  const Potential p = builtin_parabolic();
  CHECK_THROWS_AS(p(-0.1), DomainError);
  CHECK_THROWS_AS(p(2.1), DomainError);
}

TEST_CASE("potential constructor validates tiling") {
  CHECK_THROWS_AS(Potential({}), std::invalid_argument);
  CHECK_THROWS_AS(Potential({Segment{0, 1, ConstantForm{1}}, Segment{1.2, 2, ConstantForm{1}}}),
                  std::invalid_argument);
}

namespace {

void check_round_trip(const Potential& p) {
  const std::string text = render(p);
  const Potential back = parse_potential(text);
  CHECK(back.length() == doctest::Approx(p.length()).epsilon(1e-15));
  CHECK(back.v_left() == p.v_left());
  CHECK(back.v_right() == p.v_right());
  for (int i = 0; i < 1000; ++i) {
    const double x = p.length() * i / 999.0;
    const double a = p(x);
    const double b = back(x);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
  CHECK(render(parse_potential(render(back))) == render(back));
}

}  // namespace

TEST_CASE("render and parse round trip") {
  check_round_trip(builtin_parabolic());
  check_round_trip(builtin_parabola(3.7, 1.3, 0.2, -0.1));
  check_round_trip(builtin_square(1.0, 1.0));
  check_round_trip(builtin_double_barrier(0.3, 2, 5));
  check_round_trip(builtin_arbitrary());
  check_round_trip(parse_potential("left: 0\non [0,0.3): 2^-x^2\non [0.3,1]: abs(cos(3*x)) - exp(-x)/7"));
}

TEST_CASE("mirrored potential reflects about the midpoint") {
  for (const Potential& p : {builtin_arbitrary(), builtin_parabola(4, 3, 0.1, 0.5),
                             parse_potential("on [0,0.4): 1 + x^3\non [0.4,1.5]: sin(x)")}) {
    const Potential m = p.mirrored();
    CHECK(m.length() == doctest::Approx(p.length()).epsilon(1e-15));
    CHECK(m.v_left() == p.v_right());
    CHECK(m.v_right() == p.v_left());
    for (int i = 1; i < 200; ++i) {
      const double x = p.length() * (i + 0.37) / 200.0;
      CHECK(m(x) == doctest::Approx(p(p.length() - x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampled maximum") {
  CHECK(builtin_parabolic().sampled_max() == doctest::Approx(10.0));
  CHECK(builtin_square(1.0, 1.0).sampled_max() == 1.0);
}

TEST_CASE("builtin names") {
  const auto names = builtin_names();
  REQUIRE(names.size() == 4);
  for (auto name : names) CHECK_NOTHROW(parse_potential(std::string(name)));
}
