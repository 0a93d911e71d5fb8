#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "udisc/errors.hpp"

namespace udisc {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Dense complex matrix with row-major storage.  Small and unclever on
// purpose: every consumer in this library works with matrices of at most a
// few thousand entries, where cache games buy nothing.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  // Row-of-rows construction, mostly for literals in tests and fixtures.
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CVector row(std::size_t i) const;
  CVector col(std::size_t j) const;
  void set_col(std::size_t j, const CVector& v);

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(Complex scale, CMatrix m);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& x);

CMatrix adjoint(const CMatrix& a);

// Inner product, conjugate-linear in the first argument.
Complex inner(const CVector& x, const CVector& y);
double norm(const CVector& x);
// Rank-one operator |x><y|.
CMatrix outer(const CVector& x, const CVector& y);

Complex trace(const CMatrix& a);
double max_abs(const CMatrix& a);
// max_ij |A_ij - conj(A_ji)|; zero exactly when A is Hermitian.
double hermiticity_violation(const CMatrix& a);
bool all_finite(const CMatrix& a);
bool all_finite(const CVector& x);

}  // namespace udisc
