#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "udisc/errors.hpp"
#include "udisc/hermitian.hpp"
#include "udisc/matrix.hpp"

using udisc::CMatrix;
using udisc::Complex;
using udisc::CVector;

namespace {

const Complex kI(0.0, 1.0);

CMatrix random_hermitian(std::mt19937_64& rng, std::size_t d, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = Complex(gauss(rng), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

CMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return m;
}

// |<u|v>| for unit vectors; 1 iff they agree up to a global phase.
double phase_free_match(const CVector& u, const CVector& v) {
  return std::abs(udisc::inner(u, v));
}

double reconstruction_error(const CMatrix& a, const udisc::HermitianEig& eig) {
  // ||A V - V diag(lambda)||_max
  CMatrix av = a * eig.eigenvectors;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      av(i, j) -= eig.eigenvalues[j] * eig.eigenvectors(i, j);
    }
  }
  return udisc::max_abs(av);
}

double orthonormality_error(const CMatrix& v) {
  return udisc::max_abs(adjoint(v) * v - CMatrix::identity(v.cols()));
}

}  // namespace

TEST_CASE("eigendecomposition of fixed matrices", "[hermitian]") {
  SECTION("identity") {
    const auto eig = udisc::eig_hermitian(CMatrix::identity(3));
    REQUIRE(eig.eigenvalues.size() == 3);
    for (double lambda : eig.eigenvalues) {
      REQUIRE(lambda == Catch::Approx(1.0).margin(1e-14));
    }
    REQUIRE(orthonormality_error(eig.eigenvectors) < 1e-12);
  }

  SECTION("real symmetric 2x2") {
    // [[1, 1/2], [1/2, 1]] has eigenpairs 1/2 <-> (1,-1)/sqrt2 and
    // 3/2 <-> (1,1)/sqrt2.
    const auto a = CMatrix::from_rows({{1.0, 0.5}, {0.5, 1.0}});
    const auto eig = udisc::eig_hermitian(a);
    REQUIRE(eig.eigenvalues[0] == Catch::Approx(0.5).margin(1e-13));
    REQUIRE(eig.eigenvalues[1] == Catch::Approx(1.5).margin(1e-13));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    REQUIRE(phase_free_match(eig.eigenvectors.col(0), {inv_sqrt2, -inv_sqrt2}) ==
            Catch::Approx(1.0).margin(1e-12));
    REQUIRE(phase_free_match(eig.eigenvectors.col(1), {inv_sqrt2, inv_sqrt2}) ==
            Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("complex 2x2") {
    // [[2, i], [-i, 2]] has eigenpairs 1 <-> (1,i)/sqrt2 and 3 <-> (1,-i)/sqrt2.
    const auto a = CMatrix::from_rows({{2.0, kI}, {-kI, 2.0}});
    const auto eig = udisc::eig_hermitian(a);
    REQUIRE(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-13));
    REQUIRE(eig.eigenvalues[1] == Catch::Approx(3.0).margin(1e-13));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    REQUIRE(phase_free_match(eig.eigenvectors.col(0), {inv_sqrt2, kI * inv_sqrt2}) ==
            Catch::Approx(1.0).margin(1e-12));
    REQUIRE(phase_free_match(eig.eigenvectors.col(1), {inv_sqrt2, -kI * inv_sqrt2}) ==
            Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("overlap-pair Gram matrix") {
    // [[1, g], [g, 1]] with g = e^{-1/2}: eigenvalues 1 -+ g.  These two
    // values are the frozen reference for the smallest nontrivial family
    // used throughout the suite.
    const double g = std::exp(-0.5);
    const auto a = CMatrix::from_rows({{1.0, g}, {g, 1.0}});
    const auto eig = udisc::eig_hermitian(a);
    REQUIRE(eig.eigenvalues[0] == Catch::Approx(0.3934693402873666).margin(1e-14));
    REQUIRE(eig.eigenvalues[1] == Catch::Approx(1.6065306597126334).margin(1e-14));
  }

  SECTION("input validation") {
    REQUIRE_THROWS_AS(udisc::eig_hermitian(CMatrix()), udisc::EmptyMatrix);
    REQUIRE_THROWS_AS(udisc::eig_hermitian(CMatrix(2, 3)), udisc::NonSquare);
    const auto skew = CMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    REQUIRE_THROWS_AS(udisc::eig_hermitian(skew), udisc::NotHermitian);
    auto bad = CMatrix::identity(2);
    bad(0, 1) = Complex(std::nan(""), 0.0);
    REQUIRE_THROWS_AS(udisc::eig_hermitian(bad), udisc::InvalidInput);
  }
}

TEST_CASE("eigendecomposition on random Hermitian matrices", "[hermitian]") {
  std::mt19937_64 rng(0x5eed0001);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(rng() % 30);
    const CMatrix a = random_hermitian(rng, d);
    const auto eig = udisc::eig_hermitian(a);

    const double scale = std::max(1.0, udisc::max_abs(a));
    INFO("trial " << trial << ", d = " << d);
    REQUIRE(reconstruction_error(a, eig) <= 1e-9 * scale);
    REQUIRE(orthonormality_error(eig.eigenvectors) <= 1e-10);
    REQUIRE(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));

    // trace = sum of eigenvalues
    double lambda_sum = 0.0;
    for (double lambda : eig.eigenvalues) lambda_sum += lambda;
    REQUIRE(udisc::trace(a).real() == Catch::Approx(lambda_sum).margin(1e-9 * scale * d));

    // Rayleigh quotient of a random unit vector lies inside the spectrum.
    CVector v(d);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& c : v) c = Complex(gauss(rng), gauss(rng));
    const double nv = udisc::norm(v);
    for (auto& c : v) c /= nv;
    const double rayleigh = udisc::inner(v, a * v).real();
    REQUIRE(rayleigh >= eig.eigenvalues.front() - 1e-10 * scale);
    REQUIRE(rayleigh <= eig.eigenvalues.back() + 1e-10 * scale);
  }
}

TEST_CASE("spectrum is invariant under unitary conjugation", "[hermitian]") {
  std::mt19937_64 rng(0x5eed0002);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng() % 12);
    const CMatrix a = random_hermitian(rng, d);
    // Eigenvector matrix of an unrelated Hermitian matrix is unitary.
    const CMatrix u = udisc::eig_hermitian(random_hermitian(rng, d)).eigenvectors;
    const CMatrix b = u * a * adjoint(u);

    const auto ea = udisc::eig_hermitian(a);
    const auto eb = udisc::eig_hermitian(b);
    for (std::size_t k = 0; k < d; ++k) {
      REQUIRE(ea.eigenvalues[k] == Catch::Approx(eb.eigenvalues[k]).margin(1e-10));
    }
  }
}

TEST_CASE("smallest eigenvalue grows when states are deleted", "[hermitian]") {
  // Cauchy interlacing: the spectrum of a principal submatrix is squeezed
  // between the host's extreme eigenvalues, so lambda_min can only go up.
  std::mt19937_64 rng(0x5eed0003);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 3 + static_cast<std::size_t>(rng() % 10);
    const CMatrix a = random_hermitian(rng, d);
    const double lambda_min = udisc::eig_hermitian(a).eigenvalues.front();

    const std::size_t drop = rng() % d;
    CMatrix sub(d - 1, d - 1);
    for (std::size_t i = 0, si = 0; i < d; ++i) {
      if (i == drop) continue;
      for (std::size_t j = 0, sj = 0; j < d; ++j) {
        if (j == drop) continue;
        sub(si, sj) = a(i, j);
        ++sj;
      }
      ++si;
    }
    REQUIRE(udisc::eig_hermitian(sub).eigenvalues.front() >= lambda_min - 1e-12);
  }
}

TEST_CASE("rank and nullspace of fixed matrices", "[hermitian]") {
  SECTION("all-ones 2x2") {
    // [[1,1],[1,1]] = 2 |+><+| : rank 1, nullspace spanned by (1,-1)/sqrt2.
    const auto a = CMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
    const auto rn = udisc::rank_and_nullspace(a);
    REQUIRE(rn.rank == 1);
    REQUIRE(rn.nullspace.cols() == 1);
    REQUIRE(rn.singular_values[0] == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(rn.singular_values[1] == Catch::Approx(2.0).margin(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    REQUIRE(phase_free_match(rn.nullspace.col(0), {inv_sqrt2, -inv_sqrt2}) ==
            Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("full-rank identity") {
    const auto rn = udisc::rank_and_nullspace(CMatrix::identity(4));
    REQUIRE(rn.rank == 4);
    REQUIRE(rn.nullspace.cols() == 0);
  }

  SECTION("zero matrix") {
    const auto rn = udisc::rank_and_nullspace(CMatrix(3, 2));
    REQUIRE(rn.rank == 0);
    REQUIRE(rn.nullspace.cols() == 2);
    REQUIRE(orthonormality_error(rn.nullspace) < 1e-12);
  }

  SECTION("input validation") {
    REQUIRE_THROWS_AS(udisc::rank_and_nullspace(CMatrix()), udisc::EmptyMatrix);
    REQUIRE_THROWS_AS(udisc::rank_and_nullspace(CMatrix::identity(2), 0.0),
                      udisc::InvalidInput);
    REQUIRE_THROWS_AS(udisc::rank_and_nullspace(CMatrix::identity(2), 1.0),
                      udisc::InvalidInput);
  }
}

TEST_CASE("rank and nullspace on random low-rank products", "[hermitian]") {
  std::mt19937_64 rng(0x5eed0004);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 2 + rng() % 14;
    const std::size_t cols = 2 + rng() % 14;
    const std::size_t r = 1 + rng() % std::min(rows, cols);
    // A = B C with B (rows x r), C (r x cols) has rank exactly r almost
    // surely for Gaussian factors.
    const CMatrix a = random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
    const auto rn = udisc::rank_and_nullspace(a);

    INFO("trial " << trial << ": " << rows << "x" << cols << ", rank " << r);
    REQUIRE(rn.rank == r);
    REQUIRE(rn.rank + rn.nullspace.cols() == cols);
    REQUIRE(std::is_sorted(rn.singular_values.begin(), rn.singular_values.end()));

    const double sigma_max = rn.singular_values.back();
    for (std::size_t k = 0; k < rn.nullspace.cols(); ++k) {
      // A annihilates every reported nullspace vector.
      REQUIRE(udisc::norm(a * rn.nullspace.col(k)) <= 1e-9 * sigma_max);
    }
    if (rn.nullspace.cols() > 0) {
      REQUIRE(orthonormality_error(rn.nullspace) <= 1e-10);
    }
  }
}

TEST_CASE("singular values of a Hermitian matrix are its absolute eigenvalues",
          "[hermitian]") {
  std::mt19937_64 rng(0x5eed0005);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + rng() % 10;
    const CMatrix a = random_hermitian(rng, d);
    const auto eig = udisc::eig_hermitian(a);
    const auto rn = udisc::rank_and_nullspace(a, 1e-13);

    std::vector<double> abs_lambda;
    for (double lambda : eig.eigenvalues) abs_lambda.push_back(std::abs(lambda));
    std::sort(abs_lambda.begin(), abs_lambda.end());
    const double scale = std::max(1.0, abs_lambda.back());
    for (std::size_t k = 0; k < d; ++k) {
      REQUIRE(rn.singular_values[k] == Catch::Approx(abs_lambda[k]).margin(1e-10 * scale));
    }
  }
}

TEST_CASE("positive semidefiniteness checks", "[hermitian]") {
  REQUIRE(udisc::is_psd(CMatrix::identity(3)));
  // [[1,2],[2,1]] has eigenvalues -1 and 3.
  REQUIRE_FALSE(udisc::is_psd(CMatrix::from_rows({{1.0, 2.0}, {2.0, 1.0}})));

  // B^dagger B is PSD by construction.
  std::mt19937_64 rng(0x5eed0006);
  const CMatrix b = random_matrix(rng, 6, 4);
  REQUIRE(udisc::is_psd(adjoint(b) * b));

  // Tiny negative curvature within tolerance still counts as PSD.
  auto eps = CMatrix::identity(2);
  eps(0, 0) = -1e-12;
  REQUIRE(udisc::is_psd(eps));
  // Clearly negative does not.
  eps(0, 0) = -1e-3;
  REQUIRE_FALSE(udisc::is_psd(eps));
}
