#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "udisc/hermitian.hpp"
#include "udisc/matrix.hpp"

namespace udisc {

// Finite family of pure states given as ambient vectors.  Construction
// validates: d >= 1, at least one state, every vector of length d with unit
// norm within 1e-10, labels unique and one per state.
struct StateFamily {
  std::size_t dim = 0;
  std::vector<CVector> states;
  std::vector<std::string> labels;

  StateFamily(std::size_t dim, std::vector<CVector> states, std::vector<std::string> labels);

  std::size_t size() const { return states.size(); }
};

// Gram matrix G_ij = <psi_i|psi_j> of a family, the span-level reduction
// every distinguishability quantity depends on.  Construction validates:
// Hermitian within 1e-10, unit diagonal within 1e-10, PSD at the default
// tolerance.
struct GramFamily {
  CMatrix gram;
  std::vector<std::string> labels;

  GramFamily(CMatrix gram, std::vector<std::string> labels);

  std::size_t size() const { return gram.rows(); }
};

// Biorthogonal (dual) family phi_i, stored by coefficients in the psi basis:
// column i of coeffs gives phi_i = sum_j coeffs(j,i) psi_j.  For a finite
// linearly independent family the coefficient matrix is exactly G^-1.
struct DualFamily {
  CMatrix coeffs;
  CMatrix gram_inverse;
};

enum class Level { None, DistinguishableUniform, Perfect };

const char* to_string(Level level);

struct DistinguishabilityVerdict {
  Level level = Level::None;
  double q_max = 0.0;      // maximum uniform success probability (0 when none)
  double lambda_min = 0.0; // smallest Gram eigenvalue
  double tolerance_used = kDefaultTol;
};

GramFamily gram(const StateFamily& family);

// Dual family via eigendecomposition of G.  Throws NotMinimal when
// lambda_min(G) <= tol_rel: the family is linearly dependent at tolerance
// and admits no biorthogonal partner.
DualFamily dual_family(const GramFamily& gf, double tol_rel = kDefaultTol);

// Maximum uniform success probability of any unambiguous measurement on the
// family: lambda_min(G).  Returns 0 when lambda_min is below the default
// tolerance (indistinguishable from a dependent family).
double max_uniform_success(const GramFamily& gf);

// Three-level classification: none (lambda_min <= tol), perfect
// (||G - I||_max <= tol, i.e. orthonormal), otherwise uniformly
// distinguishable with q_max = lambda_min(G).
DistinguishabilityVerdict verdict(const GramFamily& gf, double tol_rel = kDefaultTol);

// Lower-frame-bound witness: true iff  alpha^dagger G alpha >=
// claimed_bound * sum_i |alpha_i|^2 - 1e-12.  Throws LengthMismatch when
// coeffs does not match the family size.
bool riesz_fischer_check(const GramFamily& gf, const CVector& coeffs, double claimed_bound);

}  // namespace udisc
