#include "udisc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "udisc/hermitian.hpp"

namespace udisc {

Complex coherent_overlap(Complex z, Complex w) {
  return std::exp(Complex(-0.5 * (std::norm(z) + std::norm(w)), 0.0) + std::conj(z) * w);
}

CVector fock_truncated_state(Complex z, int n_max) {
  if (n_max < 0) throw InvalidInput("fock_truncated_state: n_max must be >= 0");
  const double mu = std::norm(z);

  CVector amp(static_cast<std::size_t>(n_max) + 1);
  amp[0] = std::exp(-0.5 * mu);
  double weight = std::exp(-mu);  // Poisson term e^{-mu} mu^n / n!
  double captured = weight;
  for (int n = 1; n <= n_max; ++n) {
    amp[n] = amp[n - 1] * z / std::sqrt(static_cast<double>(n));
    weight *= mu / static_cast<double>(n);
    captured += weight;
  }
  const double tail = 1.0 - captured;
  if (tail > 1e-14) {
    throw TailTooLarge("fock_truncated_state: discarded weight " + std::to_string(tail) +
                       " exceeds 1e-14 at n_max = " + std::to_string(n_max));
  }
  const double scale = 1.0 / std::sqrt(captured);
  for (auto& a : amp) a *= scale;
  return amp;
}

double fundamental_area(const LatticeSpec& spec) {
  const double s = (std::conj(spec.omega1) * spec.omega2).imag();
  if (!(s > 0.0)) {
    throw DegenerateLattice("fundamental_area: Im(conj(omega1) * omega2) = " + std::to_string(s) +
                            " is not positive");
  }
  return s;
}

LatticeRing lattice_ring(const LatticeSpec& spec, int n) {
  fundamental_area(spec);  // admissibility check
  if (n < 1) throw InvalidInput("lattice_ring: n must be >= 1");
  const std::size_t count =
      static_cast<std::size_t>(2 * n - 1) * static_cast<std::size_t>(2 * n - 1);
  if (count > kLatticeSizeCap) {
    throw SizeCap("lattice_ring: " + std::to_string(count) + " states exceeds the cap of " +
                  std::to_string(kLatticeSizeCap));
  }

  LatticeRing ring;
  ring.n = n;
  ring.indices.reserve(count);
  // Shell order: vacuum first, then each surrounding ring in (n1, n2)
  // lexicographic order, so every truncation is a prefix of the next one
  // (eigenvalue interlacing across scan rows relies on this nesting).
  for (int shell = 0; shell < n; ++shell) {
    for (int n1 = -shell; n1 <= shell; ++n1) {
      for (int n2 = -shell; n2 <= shell; ++n2) {
        if (std::max(std::abs(n1), std::abs(n2)) != shell) continue;
        ring.indices.emplace_back(n1, n2);
      }
    }
  }
  ring.points.reserve(count);
  ring.labels.reserve(count);
  for (const auto& [n1, n2] : ring.indices) {
    ring.points.push_back(static_cast<double>(n1) * spec.omega1 +
                          static_cast<double>(n2) * spec.omega2);
    ring.labels.push_back("(" + std::to_string(n1) + "," + std::to_string(n2) + ")");
  }
  return ring;
}

GramFamily ring_family(const LatticeSpec& spec, int n) {
  const LatticeRing ring = lattice_ring(spec, n);
  const std::size_t m = ring.count();
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) sq[i] = std::norm(ring.points[i]);

  CMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    g(i, i) = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const Complex gij =
          std::exp(Complex(-0.5 * (sq[i] + sq[j]), 0.0) + std::conj(ring.points[i]) * ring.points[j]);
      g(i, j) = gij;
      g(j, i) = std::conj(gij);
    }
  }
  return GramFamily(std::move(g), ring.labels);
}

ThresholdScan threshold_scan(const LatticeSpec& spec, int n_max, double tol_rel) {
  const double s = fundamental_area(spec);
  if (n_max < 1) throw InvalidInput("threshold_scan: n_max must be >= 1");

  const double lower_a = gaussian_sum_bound(spec, kScanBoundCutoff);
  const double upper = two_state_upper_bound(spec);
  std::optional<double> closed;
  if (s > std::numbers::pi) closed = closed_form_bound(spec);

  ThresholdScan scan;
  scan.rows.reserve(static_cast<std::size_t>(n_max));
  double prev_lambda = std::numeric_limits<double>::infinity();
  bool tripped = false;
  for (int n = 1; n <= n_max; ++n) {
    const GramFamily gf = ring_family(spec, n);
    const double lambda = eig_hermitian(gf.gram).eigenvalues.front();
    if (lambda > prev_lambda + 1e-12) {
      throw Error("threshold_scan: interlacing violated between n = " + std::to_string(n - 1) +
                  " and n = " + std::to_string(n) + " (eigensolver noise above budget)");
    }
    prev_lambda = lambda;

    ScanRow row;
    row.n = n;
    row.count = gf.size();
    row.s = s;
    // Once a row collapses, every later one must as well (interlacing);
    // forcing it keeps the recorded q_n sequence monotone even when lambda
    // straddles the tolerance by less than solver accuracy.
    tripped = tripped || lambda <= tol_rel;
    row.collapsed = tripped;
    row.q = tripped ? 0.0 : lambda;
    row.lower_bound_a = lower_a;
    row.closed_form = closed;
    row.upper_bound = upper;
    scan.rows.push_back(row);
  }
  return scan;
}

namespace {

GaussianSumParts gaussian_sum_parts_impl(const LatticeSpec& spec, int cutoff, double s) {
  GaussianSumParts parts;
  for (int m = -cutoff; m <= cutoff; ++m) {
    for (int n = -cutoff; n <= cutoff; ++n) {
      if (m == 0 && n == 0) continue;
      const Complex omega = static_cast<double>(m) * spec.omega1 +
                            static_cast<double>(n) * spec.omega2;
      parts.direct_sum += std::exp(-0.5 * std::norm(omega));
    }
  }

  // Tail over max(|m|,|n|) > cutoff.  The perpendicular-distance estimate
  // |Omega_{m,n}| >= S * max(|m|,|n|) / max|omega_i| gives
  // e^{-|Omega|^2/2} <= q^{m^2} q^{n^2} with q = exp(-S^2 / (4 M^2)), using
  // max(m^2,n^2) >= (m^2+n^2)/2.  Splitting the outside region by which
  // index is large (overlap double-counted, harmless for an upper bound):
  //   tail <= 2 * (sum_{|m|>c} q^{m^2}) * (sum_n q^{n^2})
  //        <= 2 * (2 q^{(c+1)^2} / (1 - q^{2(c+1)})) * (1 + 2q/(1 - q^2)).
  const double mmax = std::max(std::abs(spec.omega1), std::abs(spec.omega2));
  const double q = std::exp(-s * s / (4.0 * mmax * mmax));
  const double k = static_cast<double>(cutoff) + 1.0;
  const double qk = std::pow(q, k * k);
  const double q2k = std::pow(q, 2.0 * k);
  if (q >= 1.0 || q2k >= 1.0) {
    parts.tail_bound = std::numeric_limits<double>::infinity();
    return parts;
  }
  const double f_ub = 1.0 + 2.0 * q / (1.0 - q * q);
  parts.tail_bound = 2.0 * f_ub * (2.0 * qk / (1.0 - q2k));
  return parts;
}

}  // namespace

GaussianSumParts gaussian_sum_parts(const LatticeSpec& spec, int cutoff) {
  const double s = fundamental_area(spec);
  if (cutoff < 1) throw InvalidInput("gaussian_sum_parts: cutoff must be >= 1");
  return gaussian_sum_parts_impl(spec, cutoff, s);
}

double gaussian_sum_bound(const LatticeSpec& spec, int cutoff) {
  const GaussianSumParts parts = gaussian_sum_parts(spec, cutoff);
  return 1.0 - parts.direct_sum - parts.tail_bound;
}

double closed_form_bound(const LatticeSpec& spec) {
  const double s = fundamental_area(spec);
  if (!(s > std::numbers::pi)) {
    throw HypothesisViolated("closed_form_bound: S = " + std::to_string(s) +
                             " does not exceed pi");
  }
  const double sin_arg = s / (std::abs(spec.omega1) * std::abs(spec.omega2));
  const double shortest = std::min(std::abs(spec.omega1), std::abs(spec.omega2));
  const double t = 1.0 + 2.0 * std::sqrt(std::numbers::pi) / (sin_arg * shortest);
  return 2.0 - t * t;
}

double two_state_upper_bound(const LatticeSpec& spec) {
  const double shortest = std::min(std::abs(spec.omega1), std::abs(spec.omega2));
  return 1.0 - std::exp(-0.5 * shortest * shortest);
}

}  // namespace udisc
