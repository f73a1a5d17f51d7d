#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kform/error.hpp"

namespace kform::detail {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Semicolon, Equals, Colon, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
  /// Number written with an `i` suffix, e.g. `2i` or `0.5i`.
  bool imaginary = false;
};

std::string describe(Tok kind);

/// Splits expression text into tokens; positions are byte offsets into `src`.
std::vector<Token> tokenize(std::string_view src, std::size_t base_offset = 0);

/// Cursor over a token vector with error helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind) {
    if (peek().kind != kind) fail({describe(kind)});
    return next();
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, "unexpected " + found, std::move(expected));
  }

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace kform::detail
