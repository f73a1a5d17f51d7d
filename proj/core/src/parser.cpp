#include "kform/parser.hpp"

#include <functional>

#include <nlohmann/json.hpp>

#include "kform/error.hpp"
#include "lexer.hpp"

namespace kform {

namespace {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

// Derivative factors travel through the polynomial parser as reserved variables.
const std::string kDerivativePrefix = "#d";

template <class V>
using Resolver = std::function<V(const Token&)>;

Poly divide(const Poly& a, const Poly& d, std::size_t pos) {
  auto c = d.constant_value();
  if (!c) throw ParseError(pos, "division is only allowed by constants");
  if (c->is_zero()) throw ParseError(pos, "division by zero");
  return a * Poly(c->inverse());
}

RationalFunction divide(const RationalFunction& a, const RationalFunction& d, std::size_t pos) {
  if (d.num.is_zero()) throw ParseError(pos, "division by zero");
  return a / d;
}

// Recursive descent over +,-,*,/,^ with numbers, `i`, identifiers and parentheses.
template <class V>
class ExprParser {
 public:
  ExprParser(TokenStream& ts, Resolver<V> resolve) : ts_(ts), resolve_(std::move(resolve)) {}

  V expression() {
    V acc = term();
    while (true) {
      if (ts_.accept(Tok::Plus)) {
        acc = acc + term();
      } else if (ts_.accept(Tok::Minus)) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

 private:
  V term() {
    V acc = factor();
    while (true) {
      if (ts_.accept(Tok::Star)) {
        acc = acc * factor();
      } else if (ts_.peek().kind == Tok::Slash) {
        std::size_t pos = ts_.next().pos;
        acc = divide(acc, factor(), pos);
      } else {
        return acc;
      }
    }
  }

  V factor() {
    if (ts_.accept(Tok::Minus)) return -factor();
    if (ts_.accept(Tok::Plus)) return factor();
    V base = primary();
    if (ts_.accept(Tok::Caret)) {
      const Token& e = ts_.peek();
      if (e.kind != Tok::Number || e.imaginary || e.text.find_first_not_of("0123456789") != std::string::npos)
        ts_.fail({"positive integer exponent"});
      unsigned long value = std::stoul(e.text);
      if (value == 0) throw ParseError(e.pos, "exponent must be positive", {"positive integer exponent"});
      ts_.next();
      base = base.pow(static_cast<unsigned>(value));
    }
    return base;
  }

  V primary() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::Number: {
        ts_.next();
        GaussianRational v;
        try {
          v = GaussianRational::from_decimal(t.text);
        } catch (const ParseError&) {
          throw ParseError(t.pos, "malformed number '" + t.text + "'");
        }
        return V(Poly(t.imaginary ? v * GaussianRational::imaginary_unit() : v));
      }
      case Tok::Ident: {
        ts_.next();
        if (t.text == "i") return V(Poly::imaginary_unit());
        return resolve_(t);
      }
      case Tok::LParen: {
        ts_.next();
        V inner = expression();
        ts_.expect(Tok::RParen);
        return inner;
      }
      default:
        ts_.fail({"number", "identifier", "'('"});
    }
  }

  TokenStream& ts_;
  Resolver<V> resolve_;
};

Resolver<Poly> operator_resolver(const OperatorHeader& header) {
  return [&header](const Token& t) -> Poly {
    if (header.is_param(t.text)) return Poly::variable(t.text);
    if (t.text.size() > 1 && t.text[0] == 'D') {
      if (auto k = header.axis_index(t.text.substr(1))) return Poly::variable(kDerivativePrefix + std::to_string(*k));
    }
    std::vector<std::string> expected;
    for (const auto& a : header.axes) expected.push_back("D" + a);
    for (const auto& p : header.params) expected.push_back(p);
    throw ParseError(t.pos, "unknown name '" + t.text + "'", expected);
  };
}

ScalarPDO poly_to_operator(const Poly& p, const OperatorHeader& header) {
  ScalarPDO op(header);
  for (const auto& [mono, c] : p.terms()) {
    MultiIndex alpha(header.dimension());
    Monomial rest;
    for (const auto& [name, e] : mono) {
      if (name.rfind(kDerivativePrefix, 0) == 0) {
        alpha = alpha.raised(std::stoul(name.substr(kDerivativePrefix.size())), static_cast<int>(e));
      } else {
        rest.emplace_back(name, e);
      }
    }
    op.add_term(alpha, Poly::term(rest, c));
  }
  return op;
}

std::vector<std::string> name_list(TokenStream& ts) {
  std::vector<std::string> names;
  do {
    const Token& t = ts.expect(Tok::Ident);
    names.push_back(t.text);
  } while (ts.accept(Tok::Comma));
  ts.expect(Tok::Semicolon);
  return names;
}

void validate_at(const OperatorHeader& h, std::size_t pos) {
  try {
    h.validate();
  } catch (const ParseError& e) {
    throw ParseError(pos, e.detail(), e.expected());
  }
}

}  // namespace

ScalarPDO parse_operator_expression(std::string_view expr, const OperatorHeader& header) {
  TokenStream ts(detail::tokenize(expr));
  ExprParser<Poly> parser(ts, operator_resolver(header));
  Poly p = parser.expression();
  if (ts.peek().kind != Tok::End) ts.fail({"'+'", "'-'", "'*'", "end of input"});
  return poly_to_operator(p, header);
}

ScalarPDO parse_scalar_operator(std::string_view src) {
  TokenStream ts(detail::tokenize(src));
  OperatorHeader header;
  bool have_axes = false;
  while (ts.peek().kind == Tok::Ident && ts.peek(1).kind == Tok::Ident &&
         (ts.peek().text == "params" || ts.peek().text == "axes")) {
    const Token& kw = ts.next();
    if (kw.text == "params") {
      if (have_axes) throw ParseError(kw.pos, "params must be declared before axes");
      header.params = name_list(ts);
    } else {
      header.axes = name_list(ts);
      have_axes = true;
    }
  }
  if (!have_axes) ts.fail({"'params'", "'axes'"});
  validate_at(header, 0);
  ExprParser<Poly> parser(ts, operator_resolver(header));
  Poly p = parser.expression();
  if (ts.peek().kind != Tok::End) ts.fail({"'+'", "'-'", "'*'", "end of input"});
  return poly_to_operator(p, header);
}

MatrixPDO parse_matrix_operator(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, std::string("invalid JSON: ") + e.what());
  }
  auto strings = [&](const char* key, bool required) {
    std::vector<std::string> out;
    if (!doc.contains(key)) {
      if (required) throw ParseError(0, std::string("matrix operator lacks \"") + key + "\"", {key});
      return out;
    }
    if (!doc[key].is_array()) throw ParseError(0, std::string("\"") + key + "\" must be an array");
    for (const auto& v : doc[key]) {
      if (!v.is_string()) throw ParseError(0, std::string("\"") + key + "\" must hold strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  OperatorHeader header{strings("axes", true), strings("params", false)};
  validate_at(header, 0);
  std::vector<std::string> fields = strings("fields", false);
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw ParseError(0, "matrix operator lacks \"entries\"", {"entries"});
  std::vector<std::vector<ScalarPDO>> rows;
  const auto& entries = doc["entries"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].is_array()) throw ParseError(0, "row " + std::to_string(i) + " is not an array");
    std::vector<ScalarPDO> row;
    for (std::size_t j = 0; j < entries[i].size(); ++j) {
      const auto& cell = entries[i][j];
      std::string text;
      if (cell.is_string()) {
        text = cell.get<std::string>();
      } else if (cell.is_number_integer() && cell.get<long>() == 0) {
        text = "0";
      } else {
        throw ParseError(0, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") must be a string");
      }
      try {
        row.push_back(parse_operator_expression(text, header));
      } catch (const ParseError& e) {
        throw ParseError(e.position(),
                         "in entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.detail(),
                         e.expected());
      }
    }
    rows.push_back(std::move(row));
  }
  return MatrixPDO(header, fields, std::move(rows));
}

AnyOperator parse_operator(std::string_view src) {
  auto first = src.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && src[first] == '{') return parse_matrix_operator(src);
  return parse_scalar_operator(src);
}

Poly parse_poly(std::string_view src, const std::optional<std::vector<std::string>>& variables) {
  TokenStream ts(detail::tokenize(src));
  ExprParser<Poly> parser(ts, [&](const Token& t) -> Poly {
    if (variables) {
      for (const auto& v : *variables)
        if (v == t.text) return Poly::variable(t.text);
      throw ParseError(t.pos, "unknown variable '" + t.text + "'", *variables);
    }
    return Poly::variable(t.text);
  });
  Poly p = parser.expression();
  if (ts.peek().kind != Tok::End) ts.fail({"'+'", "'-'", "'*'", "end of input"});
  return p;
}

RationalFunction parse_rational_function(std::string_view src) {
  TokenStream ts(detail::tokenize(src));
  ExprParser<RationalFunction> parser(ts, [](const Token& t) { return RationalFunction(Poly::variable(t.text)); });
  RationalFunction r = parser.expression();
  if (ts.peek().kind != Tok::End) ts.fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
  return r;
}

std::map<std::string, Poly> parse_assignments(std::string_view src) {
  std::map<std::string, Poly> out;
  std::size_t start = 0;
  while (start <= src.size()) {
    std::size_t comma = src.find(',', start);
    std::string_view item = src.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError(start, "expected name=value", {"'='"});
    std::string name(item.substr(0, eq));
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) throw ParseError(start, "missing name before '='", {"identifier"});
    try {
      out[name] = parse_poly(item.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(start + eq + 1 + e.position(), e.detail(), e.expected());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string print_expression(const ScalarPDO& op) {
  std::string out;
  for (const auto& [alpha, c] : op.terms()) {
    std::string mono;
    for (std::size_t k = 0; k < alpha.dimension(); ++k) {
      if (alpha[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "D" + op.header().axes[k];
      if (alpha[k] > 1) mono += "^" + std::to_string(alpha[k]);
    }
    std::string term;
    if (mono.empty()) {
      term = c.size() > 1 ? "(" + c.to_string() + ")" : c.to_string();
    } else if (c == Coeff(1)) {
      term = mono;
    } else if (c == Coeff(-1)) {
      term = "-" + mono;
    } else if (c.size() == 1) {
      term = c.to_string() + "*" + mono;
    } else {
      term = "(" + c.to_string() + ")*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::string print_operator(const ScalarPDO& op) {
  std::string out;
  auto list = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  if (!op.header().params.empty()) out += "params " + list(op.header().params) + "; ";
  out += "axes " + list(op.header().axes) + "; ";
  return out + print_expression(op);
}

std::string print_operator(const MatrixPDO& op) {
  nlohmann::ordered_json doc;
  doc["axes"] = op.header().axes;
  doc["params"] = op.header().params;
  doc["fields"] = op.fields();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : op.entries()) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& e : row) r.push_back(print_expression(e));
    rows.push_back(r);
  }
  doc["entries"] = rows;
  return doc.dump();
}

std::string print_operator(const AnyOperator& op) {
  return std::visit([](const auto& o) { return print_operator(o); }, op);
}

}  // namespace kform
