#include "lexer.hpp"

#include <cctype>

namespace kform::detail {

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semicolon: return "';'";
    case Tok::Equals: return "'='";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view src, std::size_t base_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) ++i;
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
          i = j;
          while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      Token t{Tok::Number, std::string(src.substr(start, i - start)), base_offset + start};
      if (i < src.size() && src[i] == 'i' && (i + 1 == src.size() || !is_ident_char(src[i + 1]))) {
        t.imaginary = true;
        ++i;
      }
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && is_ident_char(src[i])) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), base_offset + start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semicolon; break;
      case '=': kind = Tok::Equals; break;
      case ':': kind = Tok::Colon; break;
      default:
        throw ParseError(base_offset + i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), base_offset + i});
    ++i;
  }
  out.push_back({Tok::End, "", base_offset + src.size()});
  return out;
}

}  // namespace kform::detail
