#include "barrierscope/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "barrierscope/errors.hpp"
#include "lexer.hpp"

namespace barrierscope {
namespace detail {

std::string Token::describe() const {
  switch (kind) {
    case TokenKind::end:
      return "end of line";
    case TokenKind::number:
    case TokenKind::identifier:
    case TokenKind::symbol:
      return fmt::format("'{}'", text);
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text, int line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < text.size()) {
    const char c = text[i];
    const int column = static_cast<int>(i) + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      std::size_t j = i;
      while (j < text.size() && (is_digit(text[j]) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && is_digit(text[k])) {
          while (k < text.size() && is_digit(text[k])) ++k;
          j = k;
        }
      }
      Token tok{TokenKind::number, std::string(text.substr(i, j - i)), 0.0, line, column};
      const auto [end, ec] = std::from_chars(text.data() + i, text.data() + j, tok.number);
      if (ec != std::errc{} || end != text.data() + j) {
        throw ParseError(fmt::format("malformed number '{}'", tok.text), line, column);
      }
      tokens.push_back(std::move(tok));
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      tokens.push_back({TokenKind::identifier, std::string(text.substr(i, j - i)), 0.0, line, column});
      i = j;
      continue;
    }
    constexpr std::string_view symbols = "+-*/^()[],:=";
    if (symbols.find(c) != std::string_view::npos) {
      tokens.push_back({TokenKind::symbol, std::string(1, c), 0.0, line, column});
      ++i;
      continue;
    }
    throw ParseError(fmt::format("unexpected character '{}'", c), line, column);
  }
  tokens.push_back({TokenKind::end, "", 0.0, line, static_cast<int>(text.size()) + 1});
  return tokens;
}

const Token& TokenCursor::next() {
  const Token& tok = tokens_[pos_];
  if (tok.kind != TokenKind::end) ++pos_;
  return tok;
}

bool TokenCursor::accept(char symbol) {
  if (peek().is(symbol)) {
    next();
    return true;
  }
  return false;
}

const Token& TokenCursor::expect(char symbol, std::string_view context) {
  if (!peek().is(symbol)) {
    fail(peek(), fmt::format("expected '{}' {}, found {}", symbol, context, peek().describe()));
  }
  return next();
}

double TokenCursor::expect_number(std::string_view context) {
  double sign = 1.0;
  if (accept('-')) {
    sign = -1.0;
  } else {
    accept('+');
  }
  if (peek().kind != TokenKind::number) {
    fail(peek(), fmt::format("expected number {}, found {}", context, peek().describe()));
  }
  return sign * next().number;
}

void TokenCursor::fail(const Token& at, const std::string& message) const {
  throw ParseError(message, at.line, at.column);
}

enum class Op { number, variable, negate, add, subtract, multiply, divide, power, call };
enum class Function { sin, cos, exp, sqrt, abs };

struct Node {
  Op op = Op::number;
  double value = 0.0;
  Function function = Function::sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

constexpr std::array<std::pair<std::string_view, Function>, 5> kFunctions{{
    {"sin", Function::sin},
    {"cos", Function::cos},
    {"exp", Function::exp},
    {"sqrt", Function::sqrt},
    {"abs", Function::abs},
}};

std::string_view function_name(Function f) {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

NodePtr make_number(double v) { return std::make_shared<const Node>(Node{Op::number, v, {}, {}, {}}); }
NodePtr make_variable() { return std::make_shared<const Node>(Node{Op::variable, 0.0, {}, {}, {}}); }
NodePtr make_unary(Op op, NodePtr arg) {
  return std::make_shared<const Node>(Node{op, 0.0, {}, std::move(arg), {}});
}
NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  return std::make_shared<const Node>(Node{op, 0.0, {}, std::move(a), std::move(b)});
}
NodePtr make_call(Function f, NodePtr arg) {
  return std::make_shared<const Node>(Node{Op::call, 0.0, f, std::move(arg), {}});
}

double eval(const Node& n, double x) {
  switch (n.op) {
    case Op::number:
      return n.value;
    case Op::variable:
      return x;
    case Op::negate:
      return -eval(*n.lhs, x);
    case Op::add:
      return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::subtract:
      return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::multiply:
      return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::divide:
      return eval(*n.lhs, x) / eval(*n.rhs, x);
    case Op::power:
      return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
    case Op::call: {
      const double a = eval(*n.lhs, x);
      switch (n.function) {
        case Function::sin: return std::sin(a);
        case Function::cos: return std::cos(a);
        case Function::exp: return std::exp(a);
        case Function::sqrt: return std::sqrt(a);
        case Function::abs: return std::abs(a);
      }
    }
  }
  return std::nan("");
}

void render_into(const Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    render_into(*n.lhs, out);
    out += op;
    render_into(*n.rhs, out);
    out += ')';
  };
  switch (n.op) {
    case Op::number:
      if (std::signbit(n.value)) {
        out += fmt::format("(-{})", -n.value);
      } else {
        out += fmt::format("{}", n.value);
      }
      return;
    case Op::variable:
      out += 'x';
      return;
    case Op::negate:
      out += "(-";
      render_into(*n.lhs, out);
      out += ')';
      return;
    case Op::add: binary(" + "); return;
    case Op::subtract: binary(" - "); return;
    case Op::multiply: binary(" * "); return;
    case Op::divide: binary(" / "); return;
    case Op::power: binary("^"); return;
    case Op::call:
      out += function_name(n.function);
      out += '(';
      render_into(*n.lhs, out);
      out += ')';
      return;
  }
}

NodePtr substitute_node(const NodePtr& n, const NodePtr& replacement) {
  switch (n->op) {
    case Op::number:
      return n;
    case Op::variable:
      return replacement;
    default: {
      Node copy = *n;
      if (copy.lhs) copy.lhs = substitute_node(copy.lhs, replacement);
      if (copy.rhs) copy.rhs = substitute_node(copy.rhs, replacement);
      return std::make_shared<const Node>(std::move(copy));
    }
  }
}

class Parser {
 public:
  explicit Parser(TokenCursor& cursor) : cur_(cursor) {}

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (cur_.accept('+')) {
        lhs = make_binary(Op::add, lhs, term());
      } else if (cur_.accept('-')) {
        lhs = make_binary(Op::subtract, lhs, term());
      } else {
        return lhs;
      }
    }
  }

 private:
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (cur_.accept('*')) {
        lhs = make_binary(Op::multiply, lhs, unary());
      } else if (cur_.accept('/')) {
        lhs = make_binary(Op::divide, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (cur_.accept('-')) return make_unary(Op::negate, unary());
    if (cur_.accept('+')) return unary();
    return power();
  }

  // '^' is right associative and binds tighter than unary minus on its left.
  NodePtr power() {
    NodePtr base = primary();
    if (cur_.accept('^')) return make_binary(Op::power, base, unary());
    return base;
  }

  NodePtr primary() {
    const Token& tok = cur_.peek();
    if (tok.kind == TokenKind::number) {
      return make_number(cur_.next().number);
    }
    if (tok.is('(')) {
      cur_.next();
      NodePtr inner = expr();
      cur_.expect(')', "to close parenthesis");
      return inner;
    }
    if (tok.kind == TokenKind::identifier) {
      if (tok.text == "x") {
        cur_.next();
        return make_variable();
      }
      for (const auto& [name, fn] : kFunctions) {
        if (tok.text == name) {
          cur_.next();
          cur_.expect('(', fmt::format("after function '{}'", name));
          NodePtr arg = expr();
          cur_.expect(')', fmt::format("to close call to '{}'", name));
          return make_call(fn, std::move(arg));
        }
      }
      cur_.fail(tok, fmt::format("unknown identifier '{}' (expected x or one of sin, cos, exp, sqrt, abs)",
                                 tok.text));
    }
    cur_.fail(tok, fmt::format("unexpected {} in expression", tok.describe()));
  }

  TokenCursor& cur_;
};

}  // namespace
}  // namespace detail

Expression parse_expression(detail::TokenCursor& cursor) {
  detail::Parser parser(cursor);
  return Expression(parser.expr());
}

Expression Expression::parse(std::string_view text) {
  detail::TokenCursor cursor(detail::tokenize(text, 1));
  Expression e = parse_expression(cursor);
  if (!cursor.at_end()) {
    cursor.fail(cursor.peek(), fmt::format("unexpected {} after expression", cursor.peek().describe()));
  }
  return e;
}

Expression Expression::constant(double value) { return Expression(detail::make_number(value)); }
Expression Expression::variable() { return Expression(detail::make_variable()); }

double Expression::operator()(double x) const { return detail::eval(*root_, x); }

std::optional<double> Expression::literal_value() const {
  if (root_->op == detail::Op::number) return root_->value;
  if (root_->op == detail::Op::negate && root_->lhs->op == detail::Op::number) return -root_->lhs->value;
  return std::nullopt;
}

std::string Expression::render() const {
  std::string out;
  detail::render_into(*root_, out);
  if (out.size() > 2 && out.front() == '(' && out.back() == ')' && root_->op != detail::Op::number &&
      root_->op != detail::Op::negate) {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

Expression Expression::substitute(const Expression& replacement) const {
  return Expression(detail::substitute_node(root_, replacement.root_));
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(detail::make_binary(detail::Op::add, a.root_, b.root_));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(detail::make_binary(detail::Op::subtract, a.root_, b.root_));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(detail::make_binary(detail::Op::multiply, a.root_, b.root_));
}

}  // namespace barrierscope
