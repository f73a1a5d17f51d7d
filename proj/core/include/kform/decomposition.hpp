#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kform/bilinear.hpp"
#include "kform/operator.hpp"

namespace kform {

enum class PairingKind { Bracket, Brace };

/// coeff * [alpha, beta] or coeff * {alpha, beta} with q on `q_field`, q~ on `qt_field`.
struct Pairing {
  PairingKind kind = PairingKind::Bracket;
  MultiIndex alpha;
  MultiIndex beta;
  Coeff coeff{1};
  std::size_t q_field = 0;
  std::size_t qt_field = 0;

  BilinearExpr expand() const;
};

/// coeff * d^dq q_{q_field} * d^dqt q~_{qt_field}.
struct Product {
  Coeff coeff{1};
  MultiIndex dq;
  MultiIndex dqt;
  std::size_t q_field = 0;
  std::size_t qt_field = 0;

  BilinearExpr expand() const;
};

/// Flux contribution attached to one axis.
struct AxisFlux {
  std::size_t axis = 0;
  BilinearExpr flux;
};

struct ReduceResult {
  AxisFlux flux;
  Pairing remainder;
};

/// One reduction step on axis k:
///   P(alpha, beta) = d_k P(alpha - e_k, beta) - P(alpha - e_k, beta + e_k)
/// for P a bracket or brace. The identity is checked before returning.
ReduceResult reduce_step(const Pairing& object, std::size_t k);

/// Flux f on axis k with d_k f = c * {beta, beta + e_k}, namely f = c * d^beta q * d^beta q~.
AxisFlux brace_collapse(const MultiIndex& beta, std::size_t k, const Coeff& c = Coeff(1),
                        std::size_t q_field = 0, std::size_t qt_field = 0);
/// Recognises `object` as a brace of shape {beta, beta + e_k} (either orientation)
/// and collapses it; throws PlanError otherwise.
AxisFlux brace_collapse(const Pairing& object);

/// Product-rule collapse: flux f = p on axis k accounts for
/// c*(d^{dq+e_k} q d^{dqt} q~ + d^{dq} q d^{dqt+e_k} q~).
AxisFlux product_collapse(const Product& p, std::size_t k);

struct ExchangeResult {
  Product swapped;
  AxisFlux flux_from_q;   ///< on axis k
  AxisFlux flux_from_qt;  ///< on axis j, already carrying its minus sign
};

/// Exchange one derivative: axis k leaves q, axis j leaves q~.
///   original = swapped + d_k(flux_from_q) + d_j(flux_from_qt)
ExchangeResult exchange_step(const Product& term, std::size_t k, std::size_t j);

/// Ordered axes consumed by reduction steps on the even part 2*gamma of alpha.
struct ReductionPath {
  MultiIndex target;
  std::vector<std::size_t> axes;
};

/// How the odd axes of alpha are handled: `transfer` are moved to q~ by
/// reduction steps (ascending order), then `exchanges` (axis from q, axis from q~)
/// swap derivatives until the remainder cancels or collapses.
struct OddPlan {
  std::vector<std::size_t> transfer;
  std::vector<std::pair<std::size_t, std::size_t>> exchanges;
};

struct TermPlan {
  ReductionPath path;
  std::optional<OddPlan> odd;
};

/// One TermPlan per entry of operator_terms(L), in the same order.
struct DecompositionPlan {
  std::vector<TermPlan> terms;
};

/// Throws PlanError if `plan` is not a valid plan for `alpha`.
void validate_term_plan(const MultiIndex& alpha, const TermPlan& plan);

TermPlan default_term_plan(const MultiIndex& alpha);
DecompositionPlan default_plan(const ScalarPDO& op);
DecompositionPlan default_plan(const MatrixPDO& op);
DecompositionPlan default_plan(const AnyOperator& op);

/// Fluxes a_1..a_n with sum_j d_j a_j = rhs.
struct DivergenceDecomposition {
  std::size_t dimension = 0;
  Naming naming;
  std::vector<BilinearExpr> fluxes;
  /// q~ L q - q L^dagger q~ of the source operator.
  BilinearExpr rhs{0};
  /// Set only by verify-gated constructors (decompose, decompose_system).
  bool verified = false;
};

/// Divergence decomposition along `plan`; verified before it is returned.
DivergenceDecomposition decompose(const ScalarPDO& op, const DecompositionPlan& plan);
DivergenceDecomposition decompose_system(const MatrixPDO& op, const DecompositionPlan& plan);
DivergenceDecomposition decompose(const AnyOperator& op, const DecompositionPlan& plan);
DivergenceDecomposition decompose(const AnyOperator& op);

struct DivergenceCheck {
  bool pass = false;
  /// sum_j d_j a_j - rhs; empty iff pass.
  BilinearExpr residual{0};
};

DivergenceCheck verify_divergence(const DivergenceDecomposition& d, const BilinearExpr& rhs);
DivergenceCheck verify_divergence(const DivergenceDecomposition& d, const ScalarPDO& op);
DivergenceCheck verify_divergence(const DivergenceDecomposition& d, const MatrixPDO& op);

/// sigma(alpha) = (sum gamma_k)! / prod gamma_k!.
mpz_class sigma_count(const MultiIndex& alpha);
/// O_alpha! * sigma(alpha).
mpz_class term_count(const MultiIndex& alpha);
/// N(L) = prod over terms of O_alpha! * sigma(alpha).
mpz_class count_forms(const AnyOperator& op);
mpz_class count_forms(const std::vector<OperatorTerm>& terms);

inline constexpr std::uint64_t kDefaultEnumerationCeiling = 1'000'000;

/// Lazily yields every plan of an operator, each exactly once, in a fixed order.
class PlanEnumerator {
 public:
  /// Throws EnumerationLimitError if the plan count exceeds `ceiling`.
  explicit PlanEnumerator(std::vector<OperatorTerm> terms,
                          std::uint64_t ceiling = kDefaultEnumerationCeiling);

  std::optional<DecompositionPlan> next();
  const mpz_class& total() const noexcept { return total_; }

 private:
  struct TermState {
    MultiIndex alpha;
    std::vector<std::size_t> path;
    std::vector<bool> transfer_mask;  // over odd axes
    std::vector<std::size_t> left;    // odd axes kept on q, current permutation
    std::vector<std::size_t> right;   // transferred axes, current permutation
    void reset();
    bool advance();
    TermPlan plan() const;
    void split_odd();
  };

  std::vector<TermState> states_;
  mpz_class total_;
  bool done_ = false;
  bool started_ = false;
};

std::vector<DecompositionPlan> enumerate_plans(const AnyOperator& op,
                                               std::uint64_t ceiling = kDefaultEnumerationCeiling);

/// Ceiling from the KFORM_ENUM_CEILING environment variable, or the default.
std::uint64_t enumeration_ceiling_from_env();

}  // namespace kform
