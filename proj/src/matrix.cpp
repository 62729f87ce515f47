#include "spectra/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spectra/errors.hpp"

namespace spectra {

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in +=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in -=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  const int n = std::min(rows_, cols_);
  for (int i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

CMatrix operator+(CMatrix a, const CMatrix& b) {
  a += b;
  return a;
}

CMatrix operator-(CMatrix a, const CMatrix& b) {
  a -= b;
  return a;
}

CMatrix operator*(Complex scalar, CMatrix a) {
  a *= scalar;
  return a;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("CMatrix: shape mismatch in matmul");
  CMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

LuFactorization::LuFactorization(CMatrix m) : lu_(std::move(m)) {
  if (lu_.rows() != lu_.cols())
    throw std::invalid_argument("LuFactorization: matrix must be square");
  const int n = lu_.rows();
  perm_.resize(n);
  for (int i = 0; i < n; ++i) perm_[i] = i;
  min_pivot_ = std::numeric_limits<double>::infinity();

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu_(perm_[k], k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu_(perm_[i], k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    std::swap(perm_[k], perm_[piv]);
    min_pivot_ = std::min(min_pivot_, best);
    if (best == 0.0)
      throw SpectralError("LuFactorization: exactly singular matrix");
    const Complex pivot = lu_(perm_[k], k);
    for (int i = k + 1; i < n; ++i) {
      const Complex factor = lu_(perm_[i], k) / pivot;
      lu_(perm_[i], k) = factor;
      if (factor == Complex{}) continue;
      for (int j = k + 1; j < n; ++j)
        lu_(perm_[i], j) -= factor * lu_(perm_[k], j);
    }
  }
}

CMatrix LuFactorization::solve(const CMatrix& rhs) const {
  const int n = lu_.rows();
  if (rhs.rows() != n)
    throw std::invalid_argument("LuFactorization: rhs row mismatch");
  const int m = rhs.cols();
  CMatrix x(n, m);
  // Forward substitution on the permuted rows (unit lower triangle).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      Complex acc = rhs(perm_[i], j);
      for (int k = 0; k < i; ++k) acc -= lu_(perm_[i], k) * x(k, j);
      x(i, j) = acc;
    }
  }
  // Back substitution (upper triangle).
  for (int i = n - 1; i >= 0; --i) {
    const Complex diag = lu_(perm_[i], i);
    for (int j = 0; j < m; ++j) {
      Complex acc = x(i, j);
      for (int k = i + 1; k < n; ++k) acc -= lu_(perm_[i], k) * x(k, j);
      x(i, j) = acc / diag;
    }
  }
  return x;
}

}  // namespace spectra
