#include "kform/poly.hpp"

#include <algorithm>
#include <cctype>

#include "kform/error.hpp"

namespace kform {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      out.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [_, e] : m) d += e;
  return d;
}

bool monomial_graded_less(const Monomial& a, const Monomial& b) {
  unsigned da = monomial_degree(a);
  unsigned db = monomial_degree(b);
  if (da != db) return da < db;
  // Lex with variables ordered by name, earlier names most significant.
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return false;  // a has var b lacks
    if (ia == a.end() || ib->first < ia->first) return true;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return false;
}

namespace {

// Divides a by b if every exponent of b is dominated; nullopt otherwise.
std::optional<Monomial> monomial_quotient(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto ia = a.begin();
  for (const auto& [name, e] : b) {
    while (ia != a.end() && ia->first < name) out.push_back(*ia++);
    if (ia == a.end() || ia->first != name || ia->second < e) return std::nullopt;
    if (ia->second > e) out.emplace_back(name, ia->second - e);
    ++ia;
  }
  while (ia != a.end()) out.push_back(*ia++);
  return out;
}

std::optional<mpq_class> rational_root(const mpq_class& q, unsigned k) {
  if (k == 1) return q;
  bool negative = sgn(q) < 0;
  if (negative && k % 2 == 0) return std::nullopt;
  mpz_class num = q.get_num();
  if (negative) num = -num;
  mpz_class rn;
  mpz_class rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), k) == 0) return std::nullopt;
  mpq_class r(negative ? mpz_class(-rn) : rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

Poly::Poly(GaussianRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Poly Poly::variable(const std::string& name, unsigned exponent) {
  Poly p;
  if (exponent == 0) return Poly(1);
  p.terms_.emplace(Monomial{{name, exponent}}, GaussianRational(1));
  return p;
}

Poly Poly::term(Monomial m, GaussianRational c) {
  Poly p;
  std::erase_if(m, [](const auto& v) { return v.second == 0; });
  std::sort(m.begin(), m.end());
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::optional<GaussianRational> Poly::constant_value() const {
  if (terms_.empty()) return GaussianRational(0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> out;
  for (const auto& [m, _] : terms_)
    for (const auto& [name, __] : m) out.insert(name);
  return out;
}

unsigned Poly::degree(const std::string& var) const {
  unsigned d = 0;
  for (const auto& [m, _] : terms_)
    for (const auto& [name, e] : m)
      if (name == var) d = std::max(d, e);
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, _] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

Poly Poly::coefficient(const std::string& var, unsigned d) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    unsigned e = 0;
    Monomial rest;
    for (const auto& v : m) {
      if (v.first == var) {
        e = v.second;
      } else {
        rest.push_back(v);
      }
    }
    if (e == d) out.add_term(rest, c);
  }
  return out;
}

void Poly::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [_, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [_, v] : out.terms_) v = -v;
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::substitute(const std::string& var, const Poly& value) const {
  return substitute(std::map<std::string, Poly>{{var, value}});
}

Poly Poly::substitute(const std::map<std::string, Poly>& values) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly t(c);
    Monomial kept;
    for (const auto& [name, e] : m) {
      auto it = values.find(name);
      if (it == values.end()) {
        kept.emplace_back(name, e);
      } else {
        t *= it->second.pow(e);
      }
    }
    if (!kept.empty()) t *= Poly::term(kept, GaussianRational(1));
    out += t;
  }
  return out;
}

std::complex<double> Poly::evaluate(const std::map<std::string, std::complex<double>>& at) const {
  std::complex<double> sum = 0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (const auto& [name, e] : m) {
      auto it = at.find(name);
      if (it == at.end()) throw DomainError("no value bound for variable '" + name + "'");
      t *= std::pow(it->second, static_cast<int>(e));
    }
    sum += t;
  }
  return sum;
}

GaussianRational Poly::evaluate_exact(const std::map<std::string, GaussianRational>& at) const {
  GaussianRational sum;
  for (const auto& [m, c] : terms_) {
    GaussianRational t = c;
    for (const auto& [name, e] : m) {
      auto it = at.find(name);
      if (it == at.end()) throw DomainError("no value bound for variable '" + name + "'");
      for (unsigned k = 0; k < e; ++k) t *= it->second;
    }
    sum += t;
  }
  return sum;
}

std::pair<Monomial, GaussianRational> Poly::leading_term() const {
  if (terms_.empty()) return {{}, GaussianRational(0)};
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (monomial_graded_less(best->first, it->first)) best = it;
  return *best;
}

std::optional<Poly> Poly::exact_divide(const Poly& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  auto [dm, dc] = divisor.leading_term();
  GaussianRational dinv = dc.inverse();
  Poly quotient;
  Poly rest = *this;
  while (!rest.is_zero()) {
    auto [rm, rc] = rest.leading_term();
    auto qm = monomial_quotient(rm, dm);
    if (!qm) return std::nullopt;
    Poly t = Poly::term(*qm, rc * dinv);
    quotient += t;
    rest -= t * divisor;
  }
  return quotient;
}

std::optional<Poly> Poly::exact_root(unsigned k) const {
  if (k == 0) throw DomainError("zeroth root");
  if (is_zero() || k == 1) return *this;
  auto [lm, lc] = leading_term();
  Monomial root_m;
  for (const auto& [name, e] : lm) {
    if (e % k != 0) return std::nullopt;
    root_m.emplace_back(name, e / k);
  }
  GaussianRational root_c;
  if (lc.is_one()) {
    root_c = 1;
  } else if (lc.is_real()) {
    auto r = rational_root(lc.re(), k);
    if (!r) return std::nullopt;
    root_c = *r;
  } else {
    return std::nullopt;
  }
  Poly root = Poly::term(root_m, root_c);
  Poly lead_power = root.pow(k - 1) * Poly(GaussianRational(static_cast<long>(k)));
  const std::size_t cap = 4 * terms_.size() + 8;
  Monomial last = root_m;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    Poly rest = *this - root.pow(k);
    if (rest.is_zero()) return root;
    auto [rm, rc] = rest.leading_term();
    auto [pm, pc] = lead_power.leading_term();
    auto qm = monomial_quotient(rm, pm);
    if (!qm || !monomial_graded_less(*qm, last)) return std::nullopt;
    root += Poly::term(*qm, rc / pc);
    last = *qm;
  }
  return std::nullopt;
}

Poly Poly::clear_denominators() const {
  mpz_class l = 1;
  for (const auto& [_, c] : terms_) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
  }
  Poly out = *this;
  out *= GaussianRational(mpq_class(l));
  return out;
}

namespace {

std::vector<const Poly::TermMap::value_type*> printing_order(const Poly::TermMap& terms) {
  std::vector<const Poly::TermMap::value_type*> order;
  order.reserve(terms.size());
  for (const auto& t : terms) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return monomial_graded_less(b->first, a->first); });
  return order;
}

std::string join_signed(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (out.empty()) {
      out = p;
    } else if (!p.empty() && p[0] == '-') {
      out += " - " + p.substr(1);
    } else {
      out += " + " + p;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string Poly::to_string() const {
  std::vector<std::string> parts;
  for (const auto* t : printing_order(terms_)) {
    std::string mono;
    for (const auto& [name, e] : t->first) {
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    }
    const GaussianRational& c = t->second;
    if (mono.empty()) {
      parts.push_back(c.to_string());
    } else if (c.is_one()) {
      parts.push_back(mono);
    } else if (c == GaussianRational(-1)) {
      parts.push_back("-" + mono);
    } else {
      parts.push_back(c.to_string() + "*" + mono);
    }
  }
  return join_signed(parts);
}

std::string latex_variable(const std::string& name) {
  static const std::set<std::string> greek = {"alpha", "beta",  "gamma", "delta", "epsilon", "zeta",
                                              "eta",   "theta", "kappa", "lambda", "mu",     "nu",
                                              "xi",    "rho",   "sigma", "tau",   "phi",    "chi",
                                              "psi",   "omega"};
  std::string base = name;
  std::string sub;
  auto us = name.find('_');
  if (us != std::string::npos) {
    base = name.substr(0, us);
    sub = name.substr(us + 1);
  } else {
    auto d = name.find_first_of("0123456789");
    if (d != std::string::npos && d > 0) {
      base = name.substr(0, d);
      sub = name.substr(d);
    }
  }
  std::string out = greek.count(base) ? "\\" + base : base;
  if (!sub.empty()) out += "_{" + sub + "}";
  return out;
}

std::string Poly::to_latex() const {
  std::vector<std::string> parts;
  for (const auto* t : printing_order(terms_)) {
    std::string mono;
    for (const auto& [name, e] : t->first) {
      if (!mono.empty()) mono += " ";
      mono += latex_variable(name);
      if (e > 1) mono += "^{" + std::to_string(e) + "}";
    }
    const GaussianRational& c = t->second;
    if (mono.empty()) {
      parts.push_back(c.to_latex());
    } else if (c.is_one()) {
      parts.push_back(mono);
    } else if (c == GaussianRational(-1)) {
      parts.push_back("-" + mono);
    } else {
      parts.push_back(c.to_latex() + " " + mono);
    }
  }
  return join_signed(parts);
}

std::optional<GaussianRational> RationalFunction::evaluate_exact(
    const std::map<std::string, GaussianRational>& at) const {
  GaussianRational d = den.evaluate_exact(at);
  if (d.is_zero()) return std::nullopt;
  return num.evaluate_exact(at) / d;
}

std::string RationalFunction::to_string() const {
  if (den == Poly(1)) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

}  // namespace kform
