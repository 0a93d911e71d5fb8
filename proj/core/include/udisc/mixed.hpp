#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "udisc/povm.hpp"

namespace udisc {

// Finite family of density operators.  Construction validates each rho:
// d x d, Hermitian within 1e-10, PSD within 1e-9, unit trace within 1e-8;
// labels unique, one per operator.  Violations raise InvalidDensityMatrix
// with a per-matrix diagnostic.
struct MixedFamily {
  std::size_t dim = 0;
  std::vector<CMatrix> rhos;
  std::vector<std::string> labels;

  MixedFamily(std::size_t dim, std::vector<CMatrix> rhos, std::vector<std::string> labels);

  std::size_t size() const { return rhos.size(); }
};

struct MixedVerdict {
  bool distinguishable = false;
  // The two equivalent formulations, both evaluated and cross-checked:
  // kernel form — for every i the subspace (intersection of ker rho_k over
  // k != i) contains a vector not killed by rho_i; range form — removing
  // any i strictly drops the rank of the stacked range bases.
  bool criterion_kernel = false;
  bool criterion_range = false;
  // One unit witness e_i per state when distinguishable: e_i lies in every
  // ker rho_k (k != i) and has <e_i|rho_i e_i> > 0.
  std::vector<CVector> witnesses;
  std::optional<std::string> failing_index;  // label of the first state failing the criterion
};

MixedVerdict mixed_verdict(const MixedFamily& family, double tol_rel = kDefaultTol);

// Witness POVM Pi_i = c |e_i><e_i| with c = 1 / ||sum_k |e_k><e_k|||, the
// uniform-weight variant of the existence construction.  Requires a
// distinguishable verdict (throws NotDistinguishable otherwise).
UnambiguousPOVM build_mixed_povm(const MixedFamily& family, const MixedVerdict& verdict);

// Confusion report of a dense POVM against density operators:
// q_{ji} = tr[Pi_j rho_i].
ConfusionReport validate(const UnambiguousPOVM& povm, const MixedFamily& family);

}  // namespace udisc
