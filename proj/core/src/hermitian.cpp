#include "udisc/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace udisc {

namespace {

constexpr int kMaxSweeps = 100;

// Jacobi rotation parameters for the Hermitian 2x2 block
//   [ app   r*u ]
//   [ r*u~  aqq ]
// with u = apq/|apq| on the unit circle.  The rotation
//   J = [ c        s*u ]
//       [ -s*u~    c   ]
// (u~ = conj(u)) annihilates the off-diagonal entry; c, s are the standard
// inner-rotation choice |t| <= 1, which keeps the method stable.
struct Rotation {
  double c;
  double s;   // t * c, signed
  Complex w;  // s * u
};

Rotation make_rotation(double app, double aqq, Complex apq, double r) {
  const Complex u = apq / r;
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return Rotation{c, s, s * u};
}

// In-place column update (p,q) <- (c*p - conj(w)*q, w*p + c*q) on matrix m.
void rotate_columns(CMatrix& m, std::size_t p, std::size_t q, const Rotation& rot) {
  const Complex wc = std::conj(rot.w);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Complex mp = m(i, p);
    const Complex mq = m(i, q);
    m(i, p) = rot.c * mp - wc * mq;
    m(i, q) = rot.w * mp + rot.c * mq;
  }
}

double offdiag_max(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows(); ++p) {
    for (std::size_t q = p + 1; q < a.cols(); ++q) m = std::max(m, std::abs(a(p, q)));
  }
  return m;
}

}  // namespace

HermitianEig eig_hermitian(const CMatrix& a) {
  if (a.empty()) throw EmptyMatrix("eig_hermitian: matrix is empty");
  if (a.rows() != a.cols()) {
    throw NonSquare("eig_hermitian: matrix is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()));
  }
  if (!all_finite(a)) throw InvalidInput("eig_hermitian: matrix has non-finite entries");
  const std::size_t d = a.rows();
  const double scale = std::max(1.0, max_abs(a));
  if (hermiticity_violation(a) > kHermTol * scale) {
    throw NotHermitian("eig_hermitian: max |A - A^dagger| entry exceeds " +
                       std::to_string(kHermTol) + " * max(1, ||A||_max)");
  }

  // Work on the exactly Hermitian average so rounding asymmetry in the input
  // cannot leak into the iteration.
  CMatrix w(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    w(i, i) = Complex(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      w(i, j) = avg;
      w(j, i) = std::conj(avg);
    }
  }

  CMatrix v = CMatrix::identity(d);
  const double thresh = 1e-14 * max_abs(w);

  bool converged = (d == 1) || offdiag_max(w) <= thresh;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex apq = w(p, q);
        const double r = std::abs(apq);
        if (r <= 0.01 * thresh) continue;
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const Rotation rot = make_rotation(app, aqq, apq, r);
        const double s = rot.s;  // signed: the diagonal update depends on sign(t)
        const double cs = rot.c * s;

        // Off-pivot entries: one pass updates columns p,q of every other
        // row and mirrors the result, so w stays Hermitian to the bit.
        const Complex wc = std::conj(rot.w);
        for (std::size_t j = 0; j < d; ++j) {
          if (j == p || j == q) continue;
          const Complex ajp = w(j, p);
          const Complex ajq = w(j, q);
          const Complex njp = rot.c * ajp - wc * ajq;
          const Complex njq = rot.w * ajp + rot.c * ajq;
          w(j, p) = njp;
          w(p, j) = std::conj(njp);
          w(j, q) = njq;
          w(q, j) = std::conj(njq);
        }
        w(p, p) = rot.c * rot.c * app - 2.0 * cs * r + s * s * aqq;
        w(q, q) = s * s * app + 2.0 * cs * r + rot.c * rot.c * aqq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;

        rotate_columns(v, p, q, rot);
      }
    }
    converged = offdiag_max(w) <= thresh;
  }
  if (!converged) {
    throw NoConvergence("eig_hermitian: off-diagonal norm not below threshold after " +
                        std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&w](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

  HermitianEig out;
  out.eigenvalues.resize(d);
  out.eigenvectors = CMatrix(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    out.eigenvalues[k] = w(order[k], order[k]).real();
    for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

RankNullspace rank_and_nullspace(const CMatrix& a, double tol_rel) {
  if (a.empty()) throw EmptyMatrix("rank_and_nullspace: matrix is empty");
  if (!(tol_rel > 0.0 && tol_rel < 1.0)) {
    throw InvalidInput("rank_and_nullspace: tol_rel must lie in (0, 1)");
  }
  if (!all_finite(a)) throw InvalidInput("rank_and_nullspace: matrix has non-finite entries");

  const std::size_t n = a.cols();
  CMatrix w = a;
  CMatrix v = CMatrix::identity(n);

  // One-sided Jacobi: orthogonalize column pairs until every pair is
  // relatively orthogonal.  Each step diagonalizes the implicit 2x2 Gram of
  // columns (p,q) without ever forming the full Gram matrix.
  constexpr double kOrth = 1e-13;
  // Columns this far below the largest one are numerically null: whatever
  // they hold is rotation residue with no resolvable direction.  Freezing
  // them is what lets the sweep terminate on rank-deficient input — a null
  // column stays fully correlated with live ones in the relative test and
  // would trigger rotations forever.
  constexpr double kNullCol = 1e-14;
  bool converged = (n == 1);
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    double max_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t i = 0; i < w.rows(); ++i) sq += std::norm(w(i, j));
      max_sq = std::max(max_sq, sq);
    }
    const double floor_sq = kNullCol * kNullCol * max_sq;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0;
        Complex apq(0.0, 0.0);
        for (std::size_t i = 0; i < w.rows(); ++i) {
          app += std::norm(w(i, p));
          aqq += std::norm(w(i, q));
          apq += std::conj(w(i, p)) * w(i, q);
        }
        if (app <= floor_sq || aqq <= floor_sq) continue;
        const double r = std::abs(apq);
        if (r * r <= kOrth * kOrth * app * aqq) continue;
        converged = false;
        const Rotation rot = make_rotation(app, aqq, apq, r);
        rotate_columns(w, p, q, rot);
        rotate_columns(v, p, q, rot);
      }
    }
  }
  if (!converged) {
    throw NoConvergence("rank_and_nullspace: column pairs not orthogonal after 60 sweeps");
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm(w.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&sigma](std::size_t i, std::size_t j) { return sigma[i] < sigma[j]; });

  const double sigma_max = sigma[order.back()];
  const double cut = tol_rel * sigma_max;

  RankNullspace out;
  std::size_t nullity = 0;
  while (nullity < n && sigma[order[nullity]] <= cut) ++nullity;
  out.rank = n - nullity;
  out.nullspace = CMatrix(n, nullity);
  for (std::size_t k = 0; k < nullity; ++k) {
    for (std::size_t i = 0; i < n; ++i) out.nullspace(i, k) = v(i, order[k]);
  }
  out.singular_values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.singular_values[k] = sigma[order[k]];
  return out;
}

bool is_psd(const CMatrix& a, double tol_abs) {
  const HermitianEig eig = eig_hermitian(a);
  return eig.eigenvalues.front() >= -tol_abs;
}

bool is_psd(const CMatrix& a) { return is_psd(a, kDefaultTol * std::max(1.0, max_abs(a))); }

}  // namespace udisc
