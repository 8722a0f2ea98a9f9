#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace barrierscope::detail {

enum class TokenKind { number, identifier, symbol, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;

  bool is(char symbol) const {
    return kind == TokenKind::symbol && text.size() == 1 && text[0] == symbol;
  }
  std::string describe() const;
};

/// Splits one line into tokens. A '#' starts a comment. The result always
/// ends with a TokenKind::end token.
std::vector<Token> tokenize(std::string_view text, int line);

class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next();
  bool accept(char symbol);
  const Token& expect(char symbol, std::string_view context);
  double expect_number(std::string_view context);
  bool at_end() const { return peek().kind == TokenKind::end; }
  [[noreturn]] void fail(const Token& at, const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace barrierscope::detail
