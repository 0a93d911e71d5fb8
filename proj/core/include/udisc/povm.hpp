#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "udisc/family.hpp"
#include "udisc/matrix.hpp"

namespace udisc {

// Tolerance ladder for POVM validation: physical violations (negative
// probability) are policed tighter than pure accumulation error.
inline constexpr double kPositivityTol = 1e-9;    // lowest admissible eigenvalue
inline constexpr double kUnambiguityTol = 1e-10;  // cross-outcome probability ceiling
inline constexpr double kNormalizationTol = 1e-8;
inline constexpr double kDistinguishFloor = 1e-8;  // minimum q_i to count as distinguishing

enum class PovmForm {
  // elements[j] is the d x d ambient operator Pi_j; inconclusive holds Pi_?.
  Dense,
  // elements[j] is an m x m coefficient matrix M_j meaning
  // Pi_j = sum_{k,l} (M_j)_{kl} |psi_k><psi_l| over the family whose Gram is
  // stored in `gram`;  Pi_? is implicit: identity minus the sum, which off
  // the span is exactly the identity and needs no storage.
  SpanCoefficient,
};

struct UnambiguousPOVM {
  PovmForm form = PovmForm::Dense;
  std::vector<std::string> labels;
  std::vector<CMatrix> elements;
  CMatrix inconclusive;  // dense form only
  CMatrix gram;          // span form only: Gram of the family the coefficients refer to

  std::size_t size() const { return elements.size(); }
};

// Full outcome-probability table of a POVM against a family, plus the
// diagnostic residuals the validation computes along the way.
struct ConfusionReport {
  std::vector<std::string> labels;
  // q_matrix[j][i] = probability of outcome j on input state i.
  std::vector<std::vector<double>> q_matrix;
  std::vector<double> q_success;       // q_i = q_matrix[i][i]
  std::vector<double> q_inconclusive;  // probability of "?" per input
  bool distinguishes = false;          // all q_i > 0 and no cross-outcome leakage
  bool uniform = false;                // distinguishes with equal q_i
  std::optional<double> q_uniform;     // present iff uniform
  double max_offdiagonal = 0.0;        // max_{j != i} |q_{ji}|
  double max_column_sum_error = 0.0;   // max_i |sum_j q_{ji} + q_{?i} - 1|
  // Pure-family diagnostics (absent for mixed families):
  std::optional<double> state_leak_max;         // max_{i != j} ||Pi_j psi_i||
  std::optional<double> inconclusive_leak_max;  // max over {i : q_i ~ 1} of ||Pi_? psi_i||
  std::optional<double> element_offdiag_max;    // max_k max_{(p,q) != (k,k)} |<psi_p|Pi_k psi_q>|
};

// Optimal uniform unambiguous POVM: Pi_j = |phi_j><phi_j| / ||X|| with
// X = sum_k |phi_k><phi_k| over the dual family, achieving uniform success
// probability lambda_min(G).  The GramFamily overload returns the
// span-coefficient form (works for families with no finite ambient space);
// the StateFamily overload materializes dense ambient operators.
// Throws NotMinimal when lambda_min(G) <= tol_rel.
UnambiguousPOVM build_optimal_povm(const GramFamily& gf, double tol_rel = kDefaultTol);
UnambiguousPOVM build_optimal_povm(const StateFamily& family, double tol_rel = kDefaultTol);

// Checks POVM well-formedness (Hermitian elements, positivity at -1e-9,
// normalization at 1e-8) and evaluates the full confusion report.  Throws
// IndexMismatch when the POVM and family labels disagree, NotAPOVM on
// positivity/normalization violations.  Never throws on a merely useless
// POVM: one that fails to distinguish is reported with
// distinguishes = false.
ConfusionReport validate(const UnambiguousPOVM& povm, const GramFamily& gf);
ConfusionReport validate(const UnambiguousPOVM& povm, const StateFamily& family);

// Span-compression diagnostic: max_i || <psi_p|(Pi_i - q_i |phi_i><phi_i|)|psi_q> ||_max,
// which is exactly 0 for every distinguishing POVM in exact arithmetic.
// Throws NotDistinguishing when validate() reports the POVM does not
// distinguish the family.
double dual_projection_check(const UnambiguousPOVM& povm, const GramFamily& gf);
double dual_projection_check(const UnambiguousPOVM& povm, const StateFamily& family);

namespace detail {
// Fill the derived flags (distinguishes / uniform / residual maxima) of a
// report whose probability table is already populated.
void finish_confusion_flags(ConfusionReport& report);
}  // namespace detail

}  // namespace udisc
