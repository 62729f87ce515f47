// Test-side oracles, independent of the code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "spectra/families.hpp"
#include "spectra/hermitian.hpp"
#include "spectra/rng.hpp"

namespace oracles {

using spectra::CMatrix;
using spectra::Complex;
using spectra::HermitianMatrix;

/// ||A - Q diag(values) Q*||_F, rebuilt by plain matrix products.
inline double reconstruction_error(const HermitianMatrix& a,
                                   const spectra::EigenDecomposition& eig) {
  const int n = a.dim();
  CMatrix lambda(n, n);
  for (int i = 0; i < n; ++i) lambda(i, i) = eig.values[i];
  const CMatrix rebuilt =
      matmul(matmul(eig.vectors, lambda), eig.vectors.adjoint());
  return (rebuilt - a.mat()).frobenius_norm();
}

inline double orthonormality_defect(const CMatrix& q) {
  return (matmul(q.adjoint(), q) - CMatrix::identity(q.cols())).frobenius_norm();
}

/// Gram route to the spectral norm: sqrt(max eigenvalue of A*A).
inline double gram_norm(const HermitianMatrix& a) {
  const auto eig =
      spectra::eig_ordered(HermitianMatrix(matmul(a.mat(), a.mat())));
  return std::sqrt(eig.values.back());
}

/// Dirichlet spectrum of the V = 0 finite-difference Laplacian:
/// (2/h^2)(1 - cos(k pi h)), k = 1..n, h = 1/(n+1).
inline std::vector<double> laplacian_1d_spectrum(int n) {
  const double h = 1.0 / (n + 1);
  std::vector<double> values(n);
  for (int k = 1; k <= n; ++k)
    values[k - 1] = (2.0 / (h * h)) * (1.0 - std::cos(k * std::numbers::pi * h));
  std::sort(values.begin(), values.end());
  return values;
}

inline std::vector<double> sorted_line_values(const spectra::CrossingLines& lines,
                                              double t) {
  std::vector<double> v;
  for (std::size_t i = 0; i < lines.slopes.size(); ++i)
    v.push_back(lines.line(static_cast<int>(i), t));
  std::sort(v.begin(), v.end());
  return v;
}

/// Scalar family A(t) = [f(t)] as a 1x1 Hermitian matrix.
inline spectra::ParamFamily scalar_family(std::function<double(double)> f,
                                          double lo = -1.0, double hi = 1.0) {
  spectra::ParamFamily fam;
  fam.kind = "scalar";
  fam.param_dim = 1;
  fam.matrix_dim = 1;
  fam.claimed_alpha = 1.0;
  fam.domain = {{lo, hi}};
  fam.evaluator = [f](std::span<const double> u) {
    CMatrix m(1, 1);
    m(0, 0) = f(u[0]);
    return HermitianMatrix(std::move(m));
  };
  return fam;
}

/// A(t) = diag(base) + t I.
inline spectra::ParamFamily shift_family(std::vector<double> base) {
  spectra::ParamFamily fam;
  fam.kind = "shift";
  fam.param_dim = 1;
  fam.matrix_dim = static_cast<int>(base.size());
  fam.claimed_alpha = 1.0;
  fam.domain = {{-1.0, 1.0}};
  fam.known_matrix_constant = 1.0;
  fam.evaluator = [base](std::span<const double> u) {
    return HermitianMatrix::diagonal(base).shifted_real(u[0]);
  };
  return fam;
}

}  // namespace oracles
