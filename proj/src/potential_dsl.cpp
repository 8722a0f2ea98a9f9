#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "barrierscope/errors.hpp"
#include "barrierscope/potential.hpp"
#include "lexer.hpp"

namespace barrierscope {

namespace {

using detail::Token;
using detail::TokenCursor;
using detail::TokenKind;

struct Clause {
  Segment segment;
  int line = 0;
};

struct BuiltinLine {
  std::string name;
  std::map<std::string, double> params;
  std::map<std::string, Token> where;
  int line = 0;
};

constexpr int kValidationSamples = 64;

BuiltinLine parse_builtin(TokenCursor& cur, const Token& name_tok) {
  BuiltinLine b{name_tok.text, {}, {}, name_tok.line};
  while (!cur.at_end()) {
    const Token& key = cur.next();
    if (key.kind != TokenKind::identifier) {
      cur.fail(key, fmt::format("expected key=value parameter, found {}", key.describe()));
    }
    cur.expect('=', fmt::format("after parameter '{}'", key.text));
    if (b.params.count(key.text) != 0) cur.fail(key, fmt::format("duplicate parameter '{}'", key.text));
    b.params[key.text] = cur.expect_number(fmt::format("for parameter '{}'", key.text));
    b.where[key.text] = key;
  }
  return b;
}

Potential expand_builtin(const BuiltinLine& b, std::optional<double> left, std::optional<double> right) {
  std::map<std::string, double> defaults;
  if (b.name == "parabola") {
    defaults = {{"height", 10.0}, {"width", 2.0}};
  } else if (b.name == "square") {
    defaults = {{"height", 1.0}, {"width", 1.0}};
  } else if (b.name == "double_barrier") {
    defaults = {{"height", 0.3}, {"barrier", 2.0}, {"well", 5.0}};
  } else if (b.name == "arbitrary") {
    defaults = {};
  }
  defaults["left"] = 0.0;
  defaults["right"] = 0.0;
  for (const auto& [key, value] : b.params) {
    auto it = defaults.find(key);
    if (it == defaults.end()) {
      const Token& t = b.where.at(key);
      throw ParseError(fmt::format("unknown parameter '{}' for built-in '{}'", key, b.name), t.line, t.column);
    }
    if (!std::isfinite(value)) {
      const Token& t = b.where.at(key);
      throw ParseError(fmt::format("parameter '{}' must be finite", key), t.line, t.column);
    }
    it->second = value;
  }
  const double vl = left.value_or(defaults["left"]);
  const double vr = right.value_or(defaults["right"]);
  auto positive = [&](const char* key) {
    const double v = defaults.at(key);
    if (!(v > 0.0)) {
      const auto it = b.where.find(key);
      throw ParseError(fmt::format("parameter '{}' must be positive", key), b.line,
                       it == b.where.end() ? 0 : it->second.column);
    }
    return v;
  };
  if (b.name == "parabola") return builtin_parabola(defaults["height"], positive("width"), vl, vr);
  if (b.name == "square") return builtin_square(defaults["height"], positive("width"), vl, vr);
  if (b.name == "double_barrier") {
    return builtin_double_barrier(defaults["height"], positive("barrier"), positive("well"), vl, vr);
  }
  Potential p = builtin_arbitrary();
  return Potential(std::vector<Segment>(p.segments().begin(), p.segments().end()), vl, vr, p.name());
}

Clause parse_clause(TokenCursor& cur, int line) {
  cur.expect('[', "to open interval after 'on'");
  const double a = cur.expect_number("for interval start");
  cur.expect(',', "between interval endpoints");
  const double b = cur.expect_number("for interval end");
  if (!cur.accept(')') && !cur.accept(']')) {
    cur.fail(cur.peek(), fmt::format("expected ')' or ']' to close interval, found {}", cur.peek().describe()));
  }
  cur.expect(':', "after interval");
  if (cur.at_end()) cur.fail(cur.peek(), "missing expression after ':'");

  Expression expr = parse_expression(cur);
  if (!cur.at_end()) {
    cur.fail(cur.peek(), fmt::format("unexpected {} after expression", cur.peek().describe()));
  }
  SegmentForm form = expr;
  if (const auto v = expr.literal_value()) form = ConstantForm{*v};
  return {{a, b, std::move(form)}, line};
}

}  // namespace

Potential parse_potential(std::string_view text) {
  std::vector<Clause> clauses;
  std::optional<BuiltinLine> builtin;
  std::optional<double> left;
  std::optional<double> right;
  int last_line = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    ++line_no;

    TokenCursor cur(detail::tokenize(line, line_no));
    if (cur.at_end()) continue;
    last_line = line_no;
    const Token head = cur.next();
    if (head.kind != TokenKind::identifier) {
      cur.fail(head, fmt::format("expected 'on', 'left', 'right' or a built-in name, found {}", head.describe()));
    }
    if (head.text == "left" || head.text == "right") {
      if (!cur.accept(':')) cur.expect('=', fmt::format("after '{}'", head.text));
      const double v = cur.expect_number(fmt::format("for '{}' level", head.text));
      if (!cur.at_end()) cur.fail(cur.peek(), fmt::format("unexpected {}", cur.peek().describe()));
      (head.text == "left" ? left : right) = v;
    } else if (head.text == "on") {
      if (builtin) throw ParseError("cannot mix 'on' clauses with a built-in shape", line_no, head.column);
      clauses.push_back(parse_clause(cur, line_no));
    } else {
      const auto names = builtin_names();
      if (std::find(names.begin(), names.end(), head.text) == names.end()) {
        cur.fail(head, fmt::format("unknown directive '{}'", head.text));
      }
      if (builtin || !clauses.empty()) {
        throw ParseError("only one built-in shape allowed and it cannot be mixed with 'on' clauses", line_no,
                         head.column);
      }
      builtin = parse_builtin(cur, head);
    }
  }

  if (builtin) return expand_builtin(*builtin, left, right);
  if (clauses.empty()) throw ParseError("no potential defined", std::max(last_line, 1), 0);

  std::stable_sort(clauses.begin(), clauses.end(),
                   [](const Clause& a, const Clause& b) { return a.segment.start < b.segment.start; });
  const double length = clauses.back().segment.end;
  const double tol = 1e-12 * std::abs(length);
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& s = clauses[i].segment;
    if (!(s.start < s.end)) {
      throw ParseError(fmt::format("interval [{}, {}) is empty", s.start, s.end), clauses[i].line, 0);
    }
    if (i == 0 && std::abs(s.start) > tol) {
      throw ParseError(fmt::format("coverage must start at x = 0, first interval starts at {}", s.start),
                       clauses[i].line, 0);
    }
    if (i > 0) {
      const double gap = s.start - clauses[i - 1].segment.end;
      if (gap > tol) {
        throw ParseError(fmt::format("gap in coverage between x = {} and x = {}", clauses[i - 1].segment.end,
                                     s.start),
                         clauses[i].line, 0);
      }
      if (gap < -tol) {
        throw ParseError(fmt::format("interval overlaps the previous one (line {})", clauses[i - 1].line),
                         clauses[i].line, 0);
      }
    }
    for (int k = 0; k <= kValidationSamples; ++k) {
      const double x = s.start + (s.end - s.start) * k / kValidationSamples;
      const double v = s(x);
      if (!std::isfinite(v)) {
        throw ParseError(fmt::format("potential is not finite at x = {} (value {})", x, v), clauses[i].line, 0);
      }
    }
  }

  std::vector<Segment> segments;
  segments.reserve(clauses.size());
  for (auto& c : clauses) segments.push_back(std::move(c.segment));
  try {
    return Potential(std::move(segments), left.value_or(0.0), right.value_or(0.0));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), std::max(last_line, 1), 0);
  }
}

}  // namespace barrierscope
