#include "barrierscope/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "barrierscope/errors.hpp"

namespace barrierscope {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// p(L - x) expanded back into ascending powers of x.
std::vector<double> reflect_polynomial(const std::vector<double>& c, double length) {
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    double binom = 1.0;
    for (std::size_t j = 0; j <= k; ++j) {
      if (j > 0) binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      out[j] += c[k] * binom * std::pow(length, static_cast<double>(k - j)) * sign;
    }
  }
  return out;
}

// c0 + x*(c1 + x*(c2 + ...)), the same operation order as horner().
Expression polynomial_expression(const std::vector<double>& c) {
  if (c.empty()) return Expression::constant(0.0);
  Expression acc = Expression::constant(c.back());
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc = Expression::constant(c[i]) + Expression::variable() * acc;
  }
  return acc;
}

std::string number_text(double v) { return fmt::format("{}", v); }

}  // namespace

double Segment::operator()(double x) const {
  return std::visit(overloaded{
                        [](const ConstantForm& f) { return f.value; },
                        [x](const PolynomialForm& f) { return horner(f.coefficients, x); },
                        [x](const Expression& f) { return f(x); },
                    },
                    form);
}

Potential::Potential(std::vector<Segment> segments, double v_left, double v_right, std::string name)
    : segments_(std::move(segments)), v_left_(v_left), v_right_(v_right), name_(std::move(name)) {
  if (segments_.empty()) throw std::invalid_argument("potential needs at least one segment");
  if (!std::isfinite(v_left_) || !std::isfinite(v_right_)) {
    throw std::invalid_argument("exterior potential levels must be finite");
  }
  for (const auto& s : segments_) {
    if (!std::isfinite(s.start) || !std::isfinite(s.end) || !(s.start < s.end)) {
      throw std::invalid_argument(fmt::format("segment [{}, {}) is empty or not finite", s.start, s.end));
    }
  }
  length_ = segments_.back().end;
  const double tol = 1e-12 * length_;
  if (std::abs(segments_.front().start) > tol) {
    throw std::invalid_argument(fmt::format("segments must start at x = 0, first starts at {}",
                                            segments_.front().start));
  }
  segments_.front().start = 0.0;
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const double prev_end = segments_[i - 1].end;
    const double gap = segments_[i].start - prev_end;
    if (gap > tol) {
      throw std::invalid_argument(fmt::format("gap between x = {} and x = {}", prev_end, segments_[i].start));
    }
    if (gap < -tol) {
      throw std::invalid_argument(fmt::format("segments overlap on [{}, {}]", segments_[i].start, prev_end));
    }
    segments_[i].start = prev_end;
  }
}

double Potential::evaluate(double x) const {
  if (!(x >= 0.0 && x <= length_)) {
    throw DomainError(fmt::format("x = {} outside barrier region [0, {}]", x, length_));
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                             [](double v, const Segment& s) { return v < s.start; });
  return (*std::prev(it))(x);
}

double Potential::sampled_max(int samples) const {
  double vmax = std::max(v_left_, v_right_);
  for (const auto& s : segments_) {
    for (int i = 0; i <= samples; ++i) {
      const double x = s.start + (s.end - s.start) * i / samples;
      vmax = std::max(vmax, s(x));
    }
  }
  return vmax;
}

Potential Potential::mirrored() const {
  std::vector<Segment> out;
  out.reserve(segments_.size());
  const double L = length_;
  const Expression reflected = Expression::constant(L) - Expression::variable();
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    SegmentForm form = std::visit(
        overloaded{
            [](const ConstantForm& f) -> SegmentForm { return f; },
            [L](const PolynomialForm& f) -> SegmentForm {
              return PolynomialForm{reflect_polynomial(f.coefficients, L)};
            },
            [&](const Expression& f) -> SegmentForm { return f.substitute(reflected); },
        },
        it->form);
    out.push_back({L - it->end, L - it->start, std::move(form)});
  }
  return Potential(std::move(out), v_right_, v_left_, name_.empty() ? name_ : name_ + " (mirrored)");
}

std::string render(const Potential& p) {
  std::string out;
  if (!p.name().empty()) out += fmt::format("# {}\n", p.name());
  out += fmt::format("left: {}\nright: {}\n", number_text(p.v_left()), number_text(p.v_right()));
  const auto segs = p.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const std::string body =
        std::visit(overloaded{
                       [](const ConstantForm& f) { return number_text(f.value); },
                       [](const PolynomialForm& f) { return polynomial_expression(f.coefficients).render(); },
                       [](const Expression& f) { return f.render(); },
                   },
                   s.form);
    const char close = (i + 1 == segs.size()) ? ']' : ')';
    out += fmt::format("on [{}, {}{}: {}\n", number_text(s.start), number_text(s.end), close, body);
  }
  return out;
}

Potential builtin_parabola(double height, double width, double v_left, double v_right) {
  if (!(width > 0.0)) throw std::invalid_argument("parabola width must be positive");
  const double half = width / 2.0;
  const double a = height / (half * half);
  // a (x - w/2)^2
  return Potential({{0.0, width, PolynomialForm{{a * half * half, -2.0 * a * half, a}}}}, v_left, v_right,
                   fmt::format("parabola height={} width={}", height, width));
}

Potential builtin_parabolic() { return builtin_parabola(10.0, 2.0); }

Potential builtin_square(double height, double width, double v_left, double v_right) {
  return Potential({{0.0, width, ConstantForm{height}}}, v_left, v_right,
                   fmt::format("square height={} width={}", height, width));
}

Potential builtin_double_barrier(double height, double barrier, double well, double v_left, double v_right) {
  return Potential({{0.0, barrier, ConstantForm{height}},
                    {barrier, barrier + well, ConstantForm{0.0}},
                    {barrier + well, 2.0 * barrier + well, ConstantForm{height}}},
                   v_left, v_right,
                   fmt::format("double_barrier height={} barrier={} well={}", height, barrier, well));
}

Potential builtin_arbitrary() {
  return Potential({{0.0, 0.5, PolynomialForm{{4.0, 8.0}}},
                    {0.5, 1.1, ConstantForm{3.0}},
                    {1.1, 2.0, Expression::parse("9*exp(-((x - 1.4)/0.3)^2)")}},
                   0.0, 0.0, "arbitrary (non-canonical demo barrier)");
}

std::span<const std::string_view> builtin_names() {
  static constexpr std::array<std::string_view, 4> names{"parabola", "square", "double_barrier", "arbitrary"};
  return names;
}

}  // namespace barrierscope
