#include "udisc/povm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace udisc {

namespace {

CMatrix gram_sqrt(const HermitianEig& eig) {
  const std::size_t m = eig.eigenvalues.size();
  CMatrix s(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < m; ++k) {
        const double lam = std::max(eig.eigenvalues[k], 0.0);
        acc += eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k)) * std::sqrt(lam);
      }
      s(i, j) = acc;
    }
  }
  return s;
}

void require_matching_labels(const std::vector<std::string>& povm_labels,
                             const std::vector<std::string>& family_labels) {
  if (povm_labels != family_labels) {
    throw IndexMismatch("validate: POVM and family label sequences differ");
  }
}

void require_psd_element(const CMatrix& op, const std::string& what) {
  if (hermiticity_violation(op) > kNormalizationTol * std::max(1.0, max_abs(op))) {
    throw NotAPOVM(what + " is not Hermitian");
  }
  const HermitianEig eig = eig_hermitian(op);
  if (eig.eigenvalues.front() < -kPositivityTol) {
    throw NotAPOVM(what + " has eigenvalue " + std::to_string(eig.eigenvalues.front()) +
                   " below -1e-9");
  }
}

}  // namespace

namespace detail {

void finish_confusion_flags(ConfusionReport& r) {
  const std::size_t m = r.q_success.size();
  double off = 0.0;
  double col_err = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double col = r.q_inconclusive[i];
    for (std::size_t j = 0; j < m; ++j) {
      col += r.q_matrix[j][i];
      if (j != i) off = std::max(off, std::abs(r.q_matrix[j][i]));
    }
    col_err = std::max(col_err, std::abs(col - 1.0));
  }
  r.max_offdiagonal = off;
  r.max_column_sum_error = col_err;

  const double q_min = *std::min_element(r.q_success.begin(), r.q_success.end());
  const double q_max = *std::max_element(r.q_success.begin(), r.q_success.end());
  r.distinguishes = q_min > kDistinguishFloor && off <= kUnambiguityTol;
  r.uniform = r.distinguishes && (q_max - q_min) <= 1e-8;
  if (r.uniform) {
    double avg = 0.0;
    for (double q : r.q_success) avg += q;
    r.q_uniform = avg / static_cast<double>(m);
  }
}

}  // namespace detail

UnambiguousPOVM build_optimal_povm(const GramFamily& gf, double tol_rel) {
  const DualFamily duals = dual_family(gf, tol_rel);  // throws NotMinimal
  const double lambda_min = eig_hermitian(gf.gram).eigenvalues.front();

  UnambiguousPOVM povm;
  povm.form = PovmForm::SpanCoefficient;
  povm.labels = gf.labels;
  povm.gram = gf.gram;
  povm.elements.reserve(gf.size());
  // Pi_j = |phi_j><phi_j| / ||X||: as a coefficient matrix over the psi
  // basis the dyad of dual column j, scaled by 1/||X|| = lambda_min(G).
  for (std::size_t j = 0; j < gf.size(); ++j) {
    const CVector dj = duals.coeffs.col(j);
    povm.elements.push_back(lambda_min * outer(dj, dj));
  }
  return povm;
}

UnambiguousPOVM build_optimal_povm(const StateFamily& family, double tol_rel) {
  const GramFamily gf = gram(family);
  const DualFamily duals = dual_family(gf, tol_rel);  // throws NotMinimal
  const double lambda_min = eig_hermitian(gf.gram).eigenvalues.front();
  const std::size_t m = family.size();
  const std::size_t d = family.dim;

  UnambiguousPOVM povm;
  povm.form = PovmForm::Dense;
  povm.labels = family.labels;
  povm.elements.reserve(m);
  CMatrix total(d, d);
  for (std::size_t j = 0; j < m; ++j) {
    CVector phi(d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
      const Complex c = duals.coeffs(i, j);
      for (std::size_t k = 0; k < d; ++k) phi[k] += c * family.states[i][k];
    }
    CMatrix pi = lambda_min * outer(phi, phi);
    total += pi;
    povm.elements.push_back(std::move(pi));
  }
  povm.inconclusive = CMatrix::identity(d) - total;
  return povm;
}

ConfusionReport validate(const UnambiguousPOVM& povm, const GramFamily& gf) {
  if (povm.form != PovmForm::SpanCoefficient) {
    throw InvalidInput(
        "validate: dense POVM cannot be evaluated against a Gram-only family; "
        "supply the StateFamily it was built from");
  }
  require_matching_labels(povm.labels, gf.labels);
  const std::size_t m = gf.size();
  if (povm.elements.size() != m) {
    throw IndexMismatch("validate: POVM has " + std::to_string(povm.elements.size()) +
                        " elements, family has " + std::to_string(m) + " states");
  }
  if (povm.gram.rows() != m || max_abs(povm.gram - gf.gram) > kNormalizationTol) {
    throw IndexMismatch("validate: span POVM was built for a different family (Gram mismatch)");
  }

  const HermitianEig eig_g = eig_hermitian(gf.gram);
  const CMatrix s = gram_sqrt(eig_g);

  CMatrix m_total(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const CMatrix& mj = povm.elements[j];
    if (mj.rows() != m || mj.cols() != m) {
      throw DimensionMismatch("validate: element " + povm.labels[j] +
                              " coefficient matrix has wrong shape");
    }
    // Pi_j restricted to the span is unitarily equivalent to S M_j S with
    // S = G^{1/2}, so positivity is checked there.
    require_psd_element(s * mj * s, "element " + povm.labels[j]);
    m_total += mj;
  }
  // Pi_? on the span is I - S M_total S; off the span it is exactly the
  // identity, so nothing further to verify (normalization is structural in
  // this representation).
  require_psd_element(CMatrix::identity(m) - s * m_total * s, "inconclusive element");

  ConfusionReport r;
  r.labels = gf.labels;
  r.q_matrix.assign(m, std::vector<double>(m, 0.0));
  r.q_success.assign(m, 0.0);
  r.q_inconclusive.assign(m, 0.0);

  double state_leak = 0.0;
  double element_off = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const CMatrix a = gf.gram * povm.elements[j];
    const CMatrix q = a * gf.gram;         // <psi_p| Pi_j |psi_q>
    const CMatrix sq = a * a * gf.gram;    // <psi_p| Pi_j^2 |psi_q>
    for (std::size_t i = 0; i < m; ++i) {
      r.q_matrix[j][i] = q(i, i).real();
      if (i != j) state_leak = std::max(state_leak, std::sqrt(std::max(0.0, sq(i, i).real())));
    }
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t qq = 0; qq < m; ++qq) {
        if (p == j && qq == j) continue;
        element_off = std::max(element_off, std::abs(q(p, qq)));
      }
    }
    r.q_success[j] = r.q_matrix[j][j];
  }
  const CMatrix a_tot = gf.gram * m_total;
  const CMatrix q_tot = a_tot * gf.gram;
  const CMatrix sq_tot = a_tot * a_tot * gf.gram;
  double inc_leak = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    r.q_inconclusive[i] = 1.0 - q_tot(i, i).real();
    if (r.q_success[i] >= 1.0 - 1e-6) {
      const double leak_sq = 1.0 - 2.0 * q_tot(i, i).real() + sq_tot(i, i).real();
      inc_leak = std::max(inc_leak, std::sqrt(std::max(0.0, leak_sq)));
    }
  }
  r.state_leak_max = state_leak;
  r.inconclusive_leak_max = inc_leak;
  r.element_offdiag_max = element_off;
  detail::finish_confusion_flags(r);
  return r;
}

ConfusionReport validate(const UnambiguousPOVM& povm, const StateFamily& family) {
  if (povm.form == PovmForm::SpanCoefficient) return validate(povm, gram(family));
  require_matching_labels(povm.labels, family.labels);
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
    require_psd_element(pi, "element " + povm.labels[j]);
    total += pi;
  }
  if (povm.inconclusive.rows() != d || povm.inconclusive.cols() != d) {
    throw DimensionMismatch("validate: inconclusive element has wrong shape");
  }
  require_psd_element(povm.inconclusive, "inconclusive element");
  if (max_abs(total + povm.inconclusive - CMatrix::identity(d)) > kNormalizationTol) {
    throw NotAPOVM("elements and inconclusive do not sum to the identity within 1e-8");
  }

  ConfusionReport r;
  r.labels = family.labels;
  r.q_matrix.assign(m, std::vector<double>(m, 0.0));
  r.q_success.assign(m, 0.0);
  r.q_inconclusive.assign(m, 0.0);

  double state_leak = 0.0;
  double element_off = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<CVector> applied(m);
    for (std::size_t i = 0; i < m; ++i) applied[i] = povm.elements[j] * family.states[i];
    for (std::size_t i = 0; i < m; ++i) {
      r.q_matrix[j][i] = inner(family.states[i], applied[i]).real();
      if (i != j) state_leak = std::max(state_leak, norm(applied[i]));
    }
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = 0; q < m; ++q) {
        if (p == j && q == j) continue;
        element_off = std::max(element_off, std::abs(inner(family.states[p], applied[q])));
      }
    }
    r.q_success[j] = r.q_matrix[j][j];
  }
  double inc_leak = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const CVector rest = povm.inconclusive * family.states[i];
    r.q_inconclusive[i] = inner(family.states[i], rest).real();
    if (r.q_success[i] >= 1.0 - 1e-6) inc_leak = std::max(inc_leak, norm(rest));
  }
  r.state_leak_max = state_leak;
  r.inconclusive_leak_max = inc_leak;
  r.element_offdiag_max = element_off;
  detail::finish_confusion_flags(r);
  return r;
}

double dual_projection_check(const UnambiguousPOVM& povm, const GramFamily& gf) {
  const ConfusionReport report = validate(povm, gf);
  if (!report.distinguishes) {
    throw NotDistinguishing("dual_projection_check: POVM does not distinguish the family");
  }
  const DualFamily duals = dual_family(gf);
  double residual = 0.0;
  for (std::size_t i = 0; i < gf.size(); ++i) {
    const CVector di = duals.coeffs.col(i);
    const CMatrix diff = povm.elements[i] - report.q_success[i] * outer(di, di);
    residual = std::max(residual, max_abs(gf.gram * diff * gf.gram));
  }
  return residual;
}

double dual_projection_check(const UnambiguousPOVM& povm, const StateFamily& family) {
  if (povm.form == PovmForm::SpanCoefficient) return dual_projection_check(povm, gram(family));
  const ConfusionReport report = validate(povm, family);
  if (!report.distinguishes) {
    throw NotDistinguishing("dual_projection_check: POVM does not distinguish the family");
  }
  const GramFamily gf = gram(family);
  const DualFamily duals = dual_family(gf);
  const std::size_t m = family.size();
  const std::size_t d = family.dim;

  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    CVector phi(d, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < m; ++k) {
      const Complex c = duals.coeffs(k, i);
      for (std::size_t a = 0; a < d; ++a) phi[a] += c * family.states[k][a];
    }
    std::vector<CVector> applied(m);
    std::vector<Complex> overlaps(m);
    for (std::size_t q = 0; q < m; ++q) {
      applied[q] = povm.elements[i] * family.states[q];
      overlaps[q] = inner(family.states[q], phi);
    }
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = 0; q < m; ++q) {
        const Complex elem = inner(family.states[p], applied[q]);
        const Complex dyad = report.q_success[i] * overlaps[p] * std::conj(overlaps[q]);
        residual = std::max(residual, std::abs(elem - dyad));
      }
    }
  }
  return residual;
}

}  // namespace udisc
