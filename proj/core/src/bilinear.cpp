#include "kform/bilinear.hpp"

#include "kform/error.hpp"

namespace kform {

BilinearExpr BilinearExpr::product(const Coeff& c, const MultiIndex& dq, const MultiIndex& dqt,
                                   std::size_t q_field, std::size_t qt_field) {
  require_same_dimension(dq, dqt);
  BilinearExpr e(dq.dimension());
  e.add(BilinearKey{q_field, qt_field, dq, dqt}, c);
  return e;
}

std::vector<BilinearTerm> BilinearExpr::term_list() const {
  std::vector<BilinearTerm> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back({c, k});
  return out;
}

void BilinearExpr::add(const BilinearKey& key, const Coeff& c) {
  if (key.dq.dimension() != dimension_ || key.dqt.dimension() != dimension_)
    throw DimensionError("bilinear term dimension does not match expression dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void BilinearExpr::require_dimension(const BilinearExpr& o) const {
  if (o.dimension_ != dimension_) throw DimensionError("bilinear expressions of different dimension");
}

BilinearExpr& BilinearExpr::operator+=(const BilinearExpr& o) {
  require_dimension(o);
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

BilinearExpr& BilinearExpr::operator-=(const BilinearExpr& o) {
  require_dimension(o);
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

BilinearExpr& BilinearExpr::operator*=(const Coeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

BilinearExpr BilinearExpr::operator-() const {
  BilinearExpr out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

BilinearExpr bracket(const MultiIndex& alpha, const MultiIndex& beta, std::size_t q_field,
                     std::size_t qt_field) {
  require_same_dimension(alpha, beta);
  BilinearExpr e(alpha.dimension());
  e.add({q_field, qt_field, alpha, beta}, Coeff(1));
  e.add({q_field, qt_field, beta, alpha}, Coeff(-1));
  return e;
}

BilinearExpr brace(const MultiIndex& alpha, const MultiIndex& beta, std::size_t q_field,
                   std::size_t qt_field) {
  require_same_dimension(alpha, beta);
  BilinearExpr e(alpha.dimension());
  e.add({q_field, qt_field, alpha, beta}, Coeff(1));
  e.add({q_field, qt_field, beta, alpha}, Coeff(1));
  return e;
}

BilinearExpr partial(const BilinearExpr& expr, std::size_t k) {
  if (k >= expr.dimension()) throw DimensionError("axis index out of range in partial derivative");
  BilinearExpr out(expr.dimension());
  for (const auto& [key, c] : expr.terms()) {
    out.add({key.q_field, key.qt_field, key.dq.raised(k), key.dqt}, c);
    out.add({key.q_field, key.qt_field, key.dq, key.dqt.raised(k)}, c);
  }
  return out;
}

std::string Naming::field_name(std::size_t i) const {
  if (fields.empty()) return "q";
  return i < fields.size() ? fields[i] : "f" + std::to_string(i);
}

std::string derivative_suffix(const MultiIndex& m, const std::vector<std::string>& axes) {
  std::string s;
  for (std::size_t k = 0; k < m.dimension(); ++k)
    for (int r = 0; r < m[k]; ++r) s += k < axes.size() ? axes[k] : "x" + std::to_string(k + 1);
  return s;
}

namespace {

std::string coeff_prefix(const Coeff& c, bool latex) {
  if (c == Coeff(1)) return "";
  if (c == Coeff(-1)) return "-";
  std::string s = latex ? c.to_latex() : c.to_string();
  if (c.size() > 1) s = (latex ? "\\left(" : "(") + s + (latex ? "\\right)" : ")");
  return s + (latex ? " " : "*");
}

std::string join_terms(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (out.empty()) {
      out = p;
    } else if (p[0] == '-') {
      out += " - " + p.substr(1);
    } else {
      out += " + " + p;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_text(const BilinearExpr& e, const Naming& naming) {
  std::vector<std::string> parts;
  for (const auto& [k, c] : e.terms()) {
    std::string q = naming.field_name(k.q_field);
    std::string qt = naming.field_name(k.qt_field) + "~";
    std::string sq = derivative_suffix(k.dq, naming.axes);
    std::string sqt = derivative_suffix(k.dqt, naming.axes);
    if (!sq.empty()) q += "_" + sq;
    if (!sqt.empty()) qt += "_" + sqt;
    parts.push_back(coeff_prefix(c, false) + qt + "*" + q);
  }
  return join_terms(parts);
}

std::string to_latex(const BilinearExpr& e, const Naming& naming) {
  std::vector<std::string> parts;
  auto field = [&](std::size_t i, bool tilde, const MultiIndex& d) {
    std::string base = naming.fields.empty() ? "q" : naming.field_name(i);
    if (!naming.fields.empty() && base.size() > 1) {
      std::string head = base.substr(0, 1);
      std::string tail = base.substr(1);
      base = latex_variable(head) + "_{" + tail + "}";
      if (tail.find_first_not_of("0123456789") != std::string::npos) base = "\\mathrm{" + naming.field_name(i) + "}";
    }
    if (tilde) base = "\\tilde{" + base + "}";
    std::string suffix = derivative_suffix(d, naming.axes);
    if (suffix.empty()) return base;
    if (naming.fields.empty()) return base + "_{" + suffix + "}";
    return "\\partial_{" + suffix + "}" + base;
  };
  for (const auto& [k, c] : e.terms())
    parts.push_back(coeff_prefix(c, true) + field(k.qt_field, true, k.dqt) + " " + field(k.q_field, false, k.dq));
  return join_terms(parts);
}

}  // namespace kform
