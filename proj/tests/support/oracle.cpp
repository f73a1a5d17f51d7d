#include "oracle.hpp"

#include <algorithm>

namespace kform::testing {

GaussianRational power(const GaussianRational& z, int e) {
  GaussianRational out(1);
  for (int i = 0; i < e; ++i) out *= z;
  return out;
}

GaussianRational monomial(const std::vector<GaussianRational>& r, const MultiIndex& m) {
  GaussianRational out(1);
  for (std::size_t k = 0; k < m.dimension(); ++k) out *= power(r.at(k), m[k]);
  return out;
}

GaussianRational value(const BilinearExpr& e, const ExpPoint& p) {
  GaussianRational sum;
  for (const auto& [key, c] : e.terms())
    sum += c.evaluate_exact(p.params) * p.A.at(key.q_field) * monomial(p.a, key.dq) * p.B.at(key.qt_field) *
           monomial(p.b, key.dqt);
  return sum;
}

GaussianRational divergence_value(const std::vector<BilinearExpr>& fluxes, const ExpPoint& p) {
  GaussianRational sum;
  for (std::size_t j = 0; j < fluxes.size(); ++j) sum += (p.a[j] + p.b[j]) * value(fluxes[j], p);
  return sum;
}

GaussianRational concomitant_value(const AnyOperator& op, const ExpPoint& p) {
  std::vector<GaussianRational> minus_b;
  for (const auto& v : p.b) minus_b.push_back(-v);
  GaussianRational sum;
  for (const auto& t : operator_terms(op))
    sum += t.coeff.evaluate_exact(p.params) * p.B.at(t.qt_field) * p.A.at(t.q_field) *
           (monomial(p.a, t.alpha) - monomial(minus_b, t.alpha));
  return sum;
}

GaussianRational symbol_value(const ScalarPDO& op, const std::vector<GaussianRational>& k,
                              const std::map<std::string, GaussianRational>& params) {
  std::vector<GaussianRational> ik;
  for (const auto& v : k) ik.push_back(GaussianRational::imaginary_unit() * v);
  GaussianRational sum;
  for (const auto& [alpha, c] : op.terms()) sum += c.evaluate_exact(params) * monomial(ik, alpha);
  return sum;
}

GaussianRational random_gaussian(std::mt19937_64& rng, int span, int max_den) {
  std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

ExpPoint random_point(std::mt19937_64& rng, std::size_t dimension, std::size_t fields,
                      const std::vector<std::string>& params) {
  ExpPoint p;
  for (std::size_t k = 0; k < dimension; ++k) {
    p.a.push_back(random_gaussian(rng));
    p.b.push_back(random_gaussian(rng));
  }
  for (std::size_t f = 0; f < fields; ++f) {
    p.A.push_back(random_gaussian(rng));
    p.B.push_back(random_gaussian(rng));
  }
  for (const auto& name : params) p.params[name] = random_gaussian(rng);
  return p;
}

ScalarPDO random_operator(std::mt19937_64& rng, const RandomOperatorSpec& spec) {
  static const std::vector<std::string> names{"x", "y", "z", "w"};
  std::uniform_int_distribution<std::size_t> dim(1, spec.max_dimension), count(1, spec.max_terms);
  std::uniform_int_distribution<int> order(0, spec.max_order);
  const std::size_t n = dim(rng);
  OperatorHeader h{std::vector<std::string>(names.begin(), names.begin() + static_cast<long>(n)), {}};
  ScalarPDO op(h);
  std::uniform_int_distribution<std::size_t> axis(0, n - 1);
  const std::size_t terms = count(rng);
  while (op.terms().size() < terms) {
    std::vector<int> alpha(n, 0);
    for (int o = order(rng); o > 0; --o) ++alpha[axis(rng)];
    GaussianRational c = random_gaussian(rng);
    if (c.is_zero()) c = GaussianRational(1);
    op.add_term(MultiIndex(alpha), Coeff(c));
  }
  return op;
}

bool oracle_agrees(const DivergenceDecomposition& d, const AnyOperator& op, std::mt19937_64& rng, int samples) {
  const auto& h = header_of(op);
  std::size_t fields = 1;
  if (const auto* m = std::get_if<MatrixPDO>(&op)) fields = m->size();
  for (int s = 0; s < samples; ++s) {
    ExpPoint p = random_point(rng, h.dimension(), fields, h.params);
    if (!(divergence_value(d.fluxes, p) == concomitant_value(op, p))) return false;
  }
  return true;
}

}  // namespace kform::testing
