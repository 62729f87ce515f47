#pragma once

#include <span>
#include <vector>

#include "spectra/matrix.hpp"

namespace spectra {

/// Dense N x N complex self-adjoint matrix. Construction enforces
/// entries[i][j] == conj(entries[j][i]): asymmetry up to 1e-12 * scale is
/// silently repaired as (A + A*)/2, anything larger is rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(CMatrix m);

  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix zero(int n);

  int dim() const { return mat_.rows(); }
  const CMatrix& mat() const { return mat_; }
  const Complex& operator()(int i, int j) const { return mat_(i, j); }

  /// A - z I as a plain complex matrix (no longer Hermitian for complex z).
  CMatrix shifted(Complex z) const;

  /// A + u I, Hermitian for real u.
  HermitianMatrix shifted_real(double u) const;

  friend HermitianMatrix operator+(const HermitianMatrix&, const HermitianMatrix&);
  friend HermitianMatrix operator-(const HermitianMatrix&, const HermitianMatrix&);
  friend HermitianMatrix operator*(double, const HermitianMatrix&);
  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, CMatrix m) : mat_(std::move(m)) {}

  CMatrix mat_;
};

/// Exact linear combinations of Hermitian matrices stay Hermitian entrywise,
/// so these skip the symmetrization pass.
HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double c, const HermitianMatrix& a);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // unitary, columns are eigenvectors
};

/// Eigendecomposition by cyclic Jacobi rotations: ascending eigenvalues with
/// matching orthonormal eigenvectors. Deterministic for identical input bits.
/// Off-diagonal Frobenius tolerance 1e-13 * ||A||_F, hard cap of 100 sweeps
/// (exceeding the cap throws SpectralError; it does not happen for Hermitian
/// input).
EigenDecomposition eig_ordered(const HermitianMatrix& a);

/// Spectral norm: max_i |mu_i(A)|.
double op_norm(const HermitianMatrix& a);

struct WeylReport {
  double gap;    // max_j |mu_j(A) - mu_j(B)|
  double bound;  // ||A - B||
  bool holds;    // gap <= bound + 1e-9 * (1 + bound)
};

/// Checks max_j |mu_j(A) - mu_j(B)| <= ||A - B|| on the ordered spectra.
WeylReport weyl_check(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace spectra
