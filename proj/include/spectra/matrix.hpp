#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spectra {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Deliberately minimal: only the operations
/// the spectral pipeline needs, all with deterministic evaluation order.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

  static CMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scalar);

  CMatrix adjoint() const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex scalar, CMatrix a);
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// LU factorization with partial pivoting of a square complex matrix.
/// Pivot choice (first strict maximum) and elimination order are fixed, so
/// identical input bits give identical factors.
class LuFactorization {
 public:
  explicit LuFactorization(CMatrix m);

  /// Solves A X = B for X. Throws SpectralError if a pivot vanished.
  CMatrix solve(const CMatrix& rhs) const;

  double min_pivot() const { return min_pivot_; }

 private:
  CMatrix lu_;
  std::vector<int> perm_;
  double min_pivot_ = 0.0;
};

}  // namespace spectra
