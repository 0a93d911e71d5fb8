#include "udisc/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "udisc/hermitian.hpp"

namespace udisc {

namespace {

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, i);
  }
  return acc;
}

// Columns of the returned matrix are the eigenvectors of rho with
// eigenvalue > tol: an orthonormal basis of the (numerical) range.
CMatrix range_basis(const HermitianEig& eig, double tol) {
  const std::size_t d = eig.eigenvalues.size();
  std::size_t first = 0;
  while (first < d && eig.eigenvalues[first] <= tol) ++first;
  CMatrix basis(d, d - first);
  for (std::size_t k = first; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) basis(i, k - first) = eig.eigenvectors(i, k);
  }
  return basis;
}

// Horizontal concatenation of the selected range bases.
CMatrix stack_columns(const std::vector<CMatrix>& bases, std::size_t skip, std::size_t d) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (k != skip) total += bases[k].cols();
  }
  CMatrix stacked(d, total);
  std::size_t at = 0;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (k == skip) continue;
    for (std::size_t j = 0; j < bases[k].cols(); ++j, ++at) {
      for (std::size_t i = 0; i < d; ++i) stacked(i, at) = bases[k](i, j);
    }
  }
  return stacked;
}

}  // namespace

MixedFamily::MixedFamily(std::size_t dim_in, std::vector<CMatrix> rhos_in,
                         std::vector<std::string> labels_in)
    : dim(dim_in), rhos(std::move(rhos_in)), labels(std::move(labels_in)) {
  if (dim == 0) throw InvalidInput("MixedFamily: dim must be positive");
  if (rhos.empty()) throw InvalidInput("MixedFamily: at least one density operator required");
  if (labels.size() != rhos.size()) {
    throw LengthMismatch("MixedFamily: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(rhos.size()) + " operators");
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw InvalidInput("MixedFamily: duplicate label \"" + l + "\"");
  }
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    const std::string where = "rhos[" + std::to_string(i) + "]";
    const CMatrix& rho = rhos[i];
    if (rho.rows() != dim || rho.cols() != dim) {
      throw InvalidDensityMatrix(where + ": shape " + std::to_string(rho.rows()) + "x" +
                                 std::to_string(rho.cols()) + ", expected " + std::to_string(dim) +
                                 "x" + std::to_string(dim));
    }
    if (!all_finite(rho)) throw InvalidDensityMatrix(where + ": non-finite entries");
    if (hermiticity_violation(rho) > 1e-10) {
      throw InvalidDensityMatrix(where + ": not Hermitian within 1e-10");
    }
    if (!is_psd(rho, 1e-9)) throw InvalidDensityMatrix(where + ": not PSD within 1e-9");
    const Complex tr = trace(rho);
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-8) {
      throw InvalidDensityMatrix(where + ": trace = " + std::to_string(tr.real()) +
                                 ", expected 1 within 1e-8");
    }
  }
}

MixedVerdict mixed_verdict(const MixedFamily& family, double tol_rel) {
  const std::size_t m = family.size();
  const std::size_t d = family.dim;

  // Numerical ranges once per operator; the kernel of a PSD operator is the
  // orthogonal complement of its range, so all kernel intersections reduce
  // to nullspaces of stacked range bases.
  std::vector<CMatrix> ranges;
  ranges.reserve(m);
  for (const CMatrix& rho : family.rhos) ranges.push_back(range_basis(eig_hermitian(rho), tol_rel));

  const CMatrix all_ranges = stack_columns(ranges, m, d);  // skip index out of bounds = keep all
  const std::size_t rank_all = rank_and_nullspace(all_ranges, tol_rel).rank;

  MixedVerdict v;
  v.criterion_kernel = true;
  v.criterion_range = true;
  std::vector<CVector> witnesses(m);
  for (std::size_t i = 0; i < m; ++i) {
    CMatrix intersection;  // orthonormal basis of the intersection of ker rho_k, k != i
    std::size_t rank_without = 0;
    const CMatrix others = stack_columns(ranges, i, d);
    if (others.cols() == 0) {
      intersection = CMatrix::identity(d);
    } else {
      const RankNullspace rn = rank_and_nullspace(adjoint(others), tol_rel);
      rank_without = rn.rank;
      intersection = rn.nullspace;
    }

    bool kernel_ok = false;
    if (intersection.cols() > 0) {
      // Compress rho_i onto the intersection and take the top eigenpair:
      // the best rank-1 witness available in the admissible subspace.
      const CMatrix compressed = adjoint(intersection) * family.rhos[i] * intersection;
      const HermitianEig eig = eig_hermitian(compressed);
      const double mu = eig.eigenvalues.back();
      if (mu > tol_rel) {
        kernel_ok = true;
        CVector e = intersection * eig.eigenvectors.col(eig.eigenvalues.size() - 1);
        const double n = norm(e);
        for (auto& c : e) c /= n;
        witnesses[i] = std::move(e);
      }
    }
    const bool range_ok = rank_without < rank_all;
    if (kernel_ok != range_ok) {
      throw Error("mixed_verdict: kernel and range criteria disagree at index " +
                  family.labels[i] + " (numerically degenerate input)");
    }
    if (!kernel_ok) {
      v.criterion_kernel = false;
      v.criterion_range = false;
      if (!v.failing_index) v.failing_index = family.labels[i];
    }
  }
  v.distinguishable = v.criterion_kernel;
  if (v.distinguishable) v.witnesses = std::move(witnesses);
  return v;
}

UnambiguousPOVM build_mixed_povm(const MixedFamily& family, const MixedVerdict& verdict) {
  if (!verdict.distinguishable) {
    throw NotDistinguishable("build_mixed_povm: family is not unambiguously distinguishable");
  }
  const std::size_t m = family.size();
  const std::size_t d = family.dim;
  if (verdict.witnesses.size() != m) {
    throw InvalidInput("build_mixed_povm: verdict carries " +
                       std::to_string(verdict.witnesses.size()) + " witnesses for " +
                       std::to_string(m) + " states");
  }

  CMatrix x(d, d);
  for (const CVector& e : verdict.witnesses) {
    if (e.size() != d) throw InvalidInput("build_mixed_povm: witness dimension mismatch");
    x += outer(e, e);
  }
  const double c = 1.0 / eig_hermitian(x).eigenvalues.back();

  UnambiguousPOVM povm;
  povm.form = PovmForm::Dense;
  povm.labels = family.labels;
  povm.elements.reserve(m);
  CMatrix total(d, d);
  for (const CVector& e : verdict.witnesses) {
    CMatrix pi = Complex(c, 0.0) * outer(e, e);
    total += pi;
    povm.elements.push_back(std::move(pi));
  }
  povm.inconclusive = CMatrix::identity(d) - total;
  return povm;
}

ConfusionReport validate(const UnambiguousPOVM& povm, const MixedFamily& family) {
  if (povm.form != PovmForm::Dense) {
    throw InvalidInput("validate: mixed families require a dense POVM");
  }
  if (povm.labels != family.labels) {
    throw IndexMismatch("validate: POVM and family label sequences differ");
  }
  const std::size_t m = family.size();
  const std::size_t d = family.dim;
  if (povm.elements.size() != m) {
    throw IndexMismatch("validate: POVM has " + std::to_string(povm.elements.size()) +
                        " elements, family has " + std::to_string(m) + " states");
  }

  CMatrix total(d, d);
  for (std::size_t j = 0; j < m; ++j) {
    const CMatrix& pi = povm.elements[j];
    if (pi.rows() != d || pi.cols() != d) {
      throw DimensionMismatch("validate: element " + povm.labels[j] + " is not " +
                              std::to_string(d) + "x" + std::to_string(d));
    }
    if (hermiticity_violation(pi) > kNormalizationTol * std::max(1.0, max_abs(pi))) {
      throw NotAPOVM("element " + povm.labels[j] + " is not Hermitian");
    }
    if (!is_psd(pi, kPositivityTol)) {
      throw NotAPOVM("element " + povm.labels[j] + " is not PSD at -1e-9");
    }
    total += pi;
  }
  if (povm.inconclusive.rows() != d || povm.inconclusive.cols() != d) {
    throw DimensionMismatch("validate: inconclusive element has wrong shape");
  }
  if (!is_psd(povm.inconclusive, kPositivityTol)) {
    throw NotAPOVM("inconclusive element is not PSD at -1e-9");
  }
  if (max_abs(total + povm.inconclusive - CMatrix::identity(d)) > kNormalizationTol) {
    throw NotAPOVM("elements and inconclusive do not sum to the identity within 1e-8");
  }

  ConfusionReport r;
  r.labels = family.labels;
  r.q_matrix.assign(m, std::vector<double>(m, 0.0));
  r.q_success.assign(m, 0.0);
  r.q_inconclusive.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      r.q_matrix[j][i] = trace_product(povm.elements[j], family.rhos[i]).real();
    }
    r.q_success[j] = r.q_matrix[j][j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    r.q_inconclusive[i] = trace_product(povm.inconclusive, family.rhos[i]).real();
  }
  detail::finish_confusion_flags(r);
  return r;
}

}  // namespace udisc
