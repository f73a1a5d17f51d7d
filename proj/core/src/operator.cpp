#include "kform/operator.hpp"

#include <set>

#include "kform/error.hpp"

namespace kform {

std::optional<std::size_t> OperatorHeader::axis_index(const std::string& name) const {
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (axes[k] == name) return k;
  return std::nullopt;
}

bool OperatorHeader::is_param(const std::string& name) const {
  for (const auto& p : params)
    if (p == name) return true;
  return false;
}

void OperatorHeader::validate() const {
  if (axes.empty()) throw ParseError(0, "operator declares no axes", {"axes"});
  std::set<std::string> seen;
  for (const auto& names : {axes, params}) {
    for (const auto& n : names) {
      if (n == "i") throw ParseError(0, "'i' is reserved for the imaginary unit");
      if (!seen.insert(n).second) throw ParseError(0, "duplicate name '" + n + "'");
    }
  }
}

ScalarPDO::ScalarPDO(OperatorHeader header) : header_(std::move(header)) {}

ScalarPDO::ScalarPDO(OperatorHeader header, const TermMap& terms) : header_(std::move(header)) {
  for (const auto& [a, c] : terms) add_term(a, c);
}

void ScalarPDO::add_term(const MultiIndex& alpha, const Coeff& c) {
  if (alpha.dimension() != dimension()) throw DimensionError("operator term has wrong dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ScalarPDO& ScalarPDO::operator+=(const ScalarPDO& o) {
  if (o.header_.axes != header_.axes) throw DimensionError("operators declare different axes");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

ScalarPDO ScalarPDO::operator-() const {
  ScalarPDO out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

MatrixPDO::MatrixPDO(OperatorHeader header, std::vector<std::string> fields,
                     std::vector<std::vector<ScalarPDO>> entries)
    : header_(std::move(header)), fields_(std::move(fields)), entries_(std::move(entries)) {
  const std::size_t m = entries_.size();
  if (m == 0) throw ParseError(0, "matrix operator has no rows");
  for (const auto& row : entries_) {
    if (row.size() != m) throw ParseError(0, "matrix operator is not square");
    for (const auto& e : row)
      if (e.header().axes != header_.axes) throw DimensionError("matrix entries disagree on axes");
  }
  if (fields_.empty())
    for (std::size_t i = 0; i < m; ++i) fields_.push_back("phi" + std::to_string(i + 1));
  if (fields_.size() != m) throw ParseError(0, "number of field names does not match matrix size");
}

std::vector<OperatorTerm> operator_terms(const ScalarPDO& op) {
  std::vector<OperatorTerm> out;
  for (const auto& [a, c] : op.terms()) out.push_back({0, 0, a, c});
  return out;
}

std::vector<OperatorTerm> operator_terms(const MatrixPDO& op) {
  std::vector<OperatorTerm> out;
  for (std::size_t i = 0; i < op.size(); ++i)
    for (std::size_t j = 0; j < op.size(); ++j)
      for (const auto& [a, c] : op.entry(i, j).terms()) out.push_back({i, j, a, c});
  return out;
}

std::vector<OperatorTerm> operator_terms(const AnyOperator& op) {
  return std::visit([](const auto& o) { return operator_terms(o); }, op);
}

const OperatorHeader& header_of(const AnyOperator& op) {
  return std::visit([](const auto& o) -> const OperatorHeader& { return o.header(); }, op);
}

Naming naming_of(const AnyOperator& op) {
  if (const auto* m = std::get_if<MatrixPDO>(&op)) return {m->header().axes, m->fields()};
  return {header_of(op).axes, {}};
}

ScalarPDO adjoint(const ScalarPDO& op) {
  ScalarPDO out(op.header());
  for (const auto& [a, c] : op.terms()) out.add_term(a, a.order() % 2 ? -c : c);
  return out;
}

MatrixPDO adjoint(const MatrixPDO& op) {
  std::vector<std::vector<ScalarPDO>> entries(op.size());
  for (std::size_t i = 0; i < op.size(); ++i)
    for (std::size_t j = 0; j < op.size(); ++j) entries[i].push_back(adjoint(op.entry(j, i)));
  return {op.header(), op.fields(), std::move(entries)};
}

std::pair<ScalarPDO, ScalarPDO> even_odd_split(const ScalarPDO& op) {
  ScalarPDO even(op.header());
  ScalarPDO odd(op.header());
  for (const auto& [a, c] : op.terms()) (a.order() % 2 ? odd : even).add_term(a, c);
  return {even, odd};
}

namespace {

BilinearExpr concomitant(std::size_t n, const std::vector<OperatorTerm>& terms) {
  BilinearExpr out(n);
  const MultiIndex zero(n);
  for (const auto& t : terms) {
    BilinearExpr piece = t.alpha.order() % 2 ? brace(t.alpha, zero, t.q_field, t.qt_field)
                                             : bracket(t.alpha, zero, t.q_field, t.qt_field);
    out += piece * t.coeff;
  }
  return out;
}

}  // namespace

BilinearExpr bilinear_rhs(const ScalarPDO& op) { return concomitant(op.dimension(), operator_terms(op)); }

BilinearExpr system_bilinear_rhs(const MatrixPDO& op) {
  return concomitant(op.dimension(), operator_terms(op));
}

BilinearExpr bilinear_rhs(const AnyOperator& op) {
  return concomitant(header_of(op).dimension(), operator_terms(op));
}

std::vector<std::string> spectral_names(const OperatorHeader& header, const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& a : header.axes) out.push_back(prefix + a);
  return out;
}

SpectralPoly symbol(const ScalarPDO& op, SymbolSign sign, const std::vector<std::string>& names) {
  if (names.size() != op.dimension()) throw DimensionError("one spectral name per axis required");
  const Poly unit = sign == SymbolSign::Plus ? Poly::imaginary_unit() : -Poly::imaginary_unit();
  std::vector<Poly> factors;
  for (const auto& n : names) factors.push_back(unit * Poly::variable(n));
  SpectralPoly out;
  for (const auto& [a, c] : op.terms()) {
    Poly t = c;
    for (std::size_t k = 0; k < a.dimension(); ++k)
      if (a[k]) t *= factors[k].pow(static_cast<unsigned>(a[k]));
    out += t;
  }
  return out;
}

}  // namespace kform
