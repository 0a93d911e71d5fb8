#include "udisc/family.hpp"

#include <cmath>
#include <unordered_set>
#include <utility>

namespace udisc {

namespace {

void require_unique_labels(const std::vector<std::string>& labels, std::size_t expected) {
  if (labels.size() != expected) {
    throw LengthMismatch("labels: got " + std::to_string(labels.size()) + ", expected " +
                         std::to_string(expected));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw InvalidInput("labels: duplicate label \"" + l + "\"");
  }
}

}  // namespace

StateFamily::StateFamily(std::size_t dim_in, std::vector<CVector> states_in,
                         std::vector<std::string> labels_in)
    : dim(dim_in), states(std::move(states_in)), labels(std::move(labels_in)) {
  if (dim == 0) throw InvalidInput("StateFamily: dim must be positive");
  if (states.empty()) throw InvalidInput("StateFamily: at least one state required");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    if (states[i].size() != dim) {
      throw DimensionMismatch(where + ": length " + std::to_string(states[i].size()) +
                              ", expected " + std::to_string(dim));
    }
    if (!all_finite(states[i])) throw InvalidInput(where + ": non-finite entries");
    if (std::abs(norm(states[i]) - 1.0) > 1e-10) {
      throw InvalidInput(where + ": norm deviates from 1 by more than 1e-10");
    }
  }
  require_unique_labels(labels, states.size());
}

GramFamily::GramFamily(CMatrix gram_in, std::vector<std::string> labels_in)
    : gram(std::move(gram_in)), labels(std::move(labels_in)) {
  if (gram.empty()) throw EmptyMatrix("GramFamily: empty Gram matrix");
  if (gram.rows() != gram.cols()) {
    throw NonSquare("GramFamily: Gram matrix is " + std::to_string(gram.rows()) + "x" +
                    std::to_string(gram.cols()));
  }
  if (!all_finite(gram)) throw InvalidInput("GramFamily: non-finite entries");
  if (hermiticity_violation(gram) > 1e-10) {
    throw NotHermitian("GramFamily: Gram matrix not Hermitian within 1e-10");
  }
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (std::abs(gram(i, i) - Complex(1.0, 0.0)) > 1e-10) {
      throw InvalidInput("GramFamily: diagonal entry " + std::to_string(i) +
                         " deviates from 1 by more than 1e-10");
    }
  }
  if (!is_psd(gram)) throw InvalidInput("GramFamily: Gram matrix is not PSD at tolerance");
  require_unique_labels(labels, gram.rows());
}

const char* to_string(Level level) {
  switch (level) {
    case Level::None:
      return "none";
    case Level::DistinguishableUniform:
      return "distinguishable_uniform";
    case Level::Perfect:
      return "perfect";
  }
  return "none";
}

GramFamily gram(const StateFamily& family) {
  const std::size_t m = family.size();
  CMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const Complex gij = inner(family.states[i], family.states[j]);
      g(i, j) = gij;
      g(j, i) = std::conj(gij);
    }
  }
  return GramFamily(std::move(g), family.labels);
}

DualFamily dual_family(const GramFamily& gf, double tol_rel) {
  const HermitianEig eig = eig_hermitian(gf.gram);
  if (eig.eigenvalues.front() <= tol_rel) {
    throw NotMinimal("dual_family: lambda_min(G) = " + std::to_string(eig.eigenvalues.front()) +
                     " <= tol " + std::to_string(tol_rel) + "; family is not minimal");
  }
  const std::size_t m = gf.size();
  // G^-1 = V diag(1/lambda) V^dagger assembled from the eigenpairs.
  CMatrix inv(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < m; ++k) {
        acc += eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k)) / eig.eigenvalues[k];
      }
      inv(i, j) = acc;
    }
  }
  // Biorthogonality makes the coefficient matrix of the duals equal G^-1.
  return DualFamily{inv, inv};
}

double max_uniform_success(const GramFamily& gf) {
  const HermitianEig eig = eig_hermitian(gf.gram);
  const double lambda_min = eig.eigenvalues.front();
  return lambda_min > kDefaultTol ? lambda_min : 0.0;
}

DistinguishabilityVerdict verdict(const GramFamily& gf, double tol_rel) {
  const HermitianEig eig = eig_hermitian(gf.gram);
  const double lambda_min = eig.eigenvalues.front();

  DistinguishabilityVerdict v;
  v.lambda_min = lambda_min;
  v.tolerance_used = tol_rel;
  if (lambda_min <= tol_rel) {
    v.level = Level::None;
    v.q_max = 0.0;
    return v;
  }
  v.q_max = lambda_min;
  const CMatrix deviation = gf.gram - CMatrix::identity(gf.size());
  v.level = max_abs(deviation) <= tol_rel ? Level::Perfect : Level::DistinguishableUniform;
  return v;
}

bool riesz_fischer_check(const GramFamily& gf, const CVector& coeffs, double claimed_bound) {
  if (coeffs.size() != gf.size()) {
    throw LengthMismatch("riesz_fischer_check: coefficient vector length " +
                         std::to_string(coeffs.size()) + ", family size " +
                         std::to_string(gf.size()));
  }
  const CVector g_alpha = gf.gram * coeffs;
  const double quad = inner(coeffs, g_alpha).real();
  double weight = 0.0;
  for (const auto& c : coeffs) weight += std::norm(c);
  return quad >= claimed_bound * weight - 1e-12;
}

}  // namespace udisc
