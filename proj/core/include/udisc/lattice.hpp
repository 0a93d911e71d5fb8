#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "udisc/family.hpp"
#include "udisc/matrix.hpp"

namespace udisc {

// Two lattice generators in phase-space units; admissible when the
// fundamental-cell area S = Im(conj(omega1) * omega2) is positive.
struct LatticeSpec {
  Complex omega1;
  Complex omega2;
};

// Square truncation of the lattice: all sites n1*omega1 + n2*omega2 with
// max(|n1|, |n2|) <= n-1, i.e. the vacuum plus n-1 surrounding rings,
// (2n-1)^2 points in total.  Points are shell-ordered (ring by ring), so
// the ring-n list is a strict prefix of the ring-(n+1) list.
struct LatticeRing {
  int n = 0;
  std::vector<std::pair<int, int>> indices;
  std::vector<Complex> points;
  std::vector<std::string> labels;  // "(n1,n2)"

  std::size_t count() const { return points.size(); }
};

struct ScanRow {
  int n = 0;
  std::size_t count = 0;
  double s = 0.0;
  double q = 0.0;          // max uniform success probability of the truncation
  bool collapsed = false;  // q below tolerance, recorded as 0
  double lower_bound_a = 0.0;
  std::optional<double> closed_form;  // absent when S <= pi
  double upper_bound = 0.0;
};

struct ThresholdScan {
  std::vector<ScanRow> rows;
};

// The two pieces of the certified Gaussian-sum lower bound:
// A = 1 - direct_sum - tail_bound.
struct GaussianSumParts {
  double direct_sum = 0.0;
  double tail_bound = 0.0;
};

// Hard ceiling on truncation size (dense eigendecomposition budget).
inline constexpr std::size_t kLatticeSizeCap = 2500;
// Lattice cutoff used for the Gaussian-sum column attached to scans.
inline constexpr int kScanBoundCutoff = 40;

// <z|w> = exp(-(|z|^2 + |w|^2)/2 + conj(z) w); the modulus is
// exp(-|z - w|^2 / 2).
Complex coherent_overlap(Complex z, Complex w);

// Number-basis amplitudes e^{-|z|^2/2} z^n / sqrt(n!), n = 0..n_max,
// renormalized after truncation.  Used as the independent oracle for
// coherent_overlap.  Throws TailTooLarge when the discarded Poisson weight
// exceeds 1e-14.
CVector fock_truncated_state(Complex z, int n_max);

// S = Im(conj(omega1) * omega2); throws DegenerateLattice when S <= 0.
double fundamental_area(const LatticeSpec& spec);

LatticeRing lattice_ring(const LatticeSpec& spec, int n);

// Gram family of the (2n-1)^2 coherent states of the ring-n truncation.
// Throws DegenerateLattice, SizeCap (count > 2500).
GramFamily ring_family(const LatticeSpec& spec, int n);

// q_n for n = 1..n_max with the bound columns attached.  Rows where the
// smallest Gram eigenvalue falls below tol_rel are recorded as q = 0 with
// the collapsed flag set (values below solver accuracy are
// indistinguishable from zero).
ThresholdScan threshold_scan(const LatticeSpec& spec, int n_max, double tol_rel = kDefaultTol);

GaussianSumParts gaussian_sum_parts(const LatticeSpec& spec, int cutoff);

// Certified lower bound on the Riesz-Fischer constant of the full lattice:
// 1 minus the Gaussian overlap sum over max(|m|,|n|) <= cutoff minus a
// rigorous tail bound.  May be negative (vacuous) — returned as-is.
double gaussian_sum_bound(const LatticeSpec& spec, int cutoff);

// 2 - (1 + 2 sqrt(pi) / (sin arg(conj(omega1) omega2) * min |omega_i|))^2;
// requires S > pi (throws HypothesisViolated otherwise).  May be <= 0.
double closed_form_bound(const LatticeSpec& spec);

// min over Omega in {omega1, omega2} of 1 - e^{-|Omega|^2/2}: the success
// probability can never beat the hardest two-state subproblem.
double two_state_upper_bound(const LatticeSpec& spec);

}  // namespace udisc
