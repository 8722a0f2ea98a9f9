#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "barrierscope/expression.hpp"

namespace barrierscope {

struct ConstantForm {
  double value = 0.0;
};

/// Polynomial in absolute position x, coefficients in ascending powers.
struct PolynomialForm {
  std::vector<double> coefficients;
};

using SegmentForm = std::variant<ConstantForm, PolynomialForm, Expression>;

/// V(x) on the half-open interval [start, end) in nm, eV.
struct Segment {
  double start = 0.0;
  double end = 0.0;
  SegmentForm form;

  double operator()(double x) const;
};

/// Region II barrier V(x) on [0, L] plus the flat exterior levels of
/// Region I (x < 0) and Region III (x > L).
///
/// Segments are half-open, so at an interior discontinuity evaluate()
/// returns the right-limit value; x = L belongs to the last segment.
/// Immutable once constructed.
class Potential {
 public:
  /// Throws std::invalid_argument if the segments do not tile [0, L].
  explicit Potential(std::vector<Segment> segments, double v_left = 0.0, double v_right = 0.0,
                     std::string name = {});

  double length() const noexcept { return length_; }
  double v_left() const noexcept { return v_left_; }
  double v_right() const noexcept { return v_right_; }
  const std::string& name() const noexcept { return name_; }
  std::span<const Segment> segments() const noexcept { return segments_; }

  /// V(x) for 0 <= x <= L; DomainError otherwise.
  double evaluate(double x) const;
  double operator()(double x) const { return evaluate(x); }

  /// Maximum of V over `samples` evenly spaced points per segment, with
  /// both exterior levels included.
  double sampled_max(int samples = 256) const;

  /// The barrier reflected about its midpoint, x -> L - x, with the
  /// exterior levels swapped.
  Potential mirrored() const;

 private:
  std::vector<Segment> segments_;
  double length_ = 0.0;
  double v_left_ = 0.0;
  double v_right_ = 0.0;
  std::string name_;
};

/// Parses the potential DSL; throws ParseError with line/column on failure.
///
///     # comments start with '#'
///     left: 0            # Region I level (optional, default 0)
///     right: 0           # Region III level (optional, default 0)
///     on [0, 1): 10*(x - 1)^2
///     on [1, 2]: 10*(x - 1)^2
///
/// or a single built-in line such as `parabola height=10 width=2`.
Potential parse_potential(std::string_view text);

/// Canonical DSL text for p; parse_potential(render(p)) reproduces it.
std::string render(const Potential& p);

/// V(x) = 10 (x - 1)^2 eV on [0, 2] nm with zero exterior levels.
Potential builtin_parabolic();
/// Parabola with edge value `height` and support [0, width].
Potential builtin_parabola(double height, double width, double v_left = 0.0, double v_right = 0.0);
Potential builtin_square(double height, double width, double v_left = 0.0, double v_right = 0.0);
/// barrier | well | barrier, all flat.
Potential builtin_double_barrier(double height, double barrier, double well, double v_left = 0.0,
                                 double v_right = 0.0);
/// Non-canonical demo barrier on [0, 2] nm: a linear ramp, a classically
/// allowed plateau and a Gaussian hump, joined by jumps.
Potential builtin_arbitrary();

/// Names accepted by parse_potential as built-in lines.
std::span<const std::string_view> builtin_names();

}  // namespace barrierscope
