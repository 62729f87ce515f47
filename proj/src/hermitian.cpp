#include "spectra/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

constexpr double kAsymmetryTol = 1e-12;
constexpr double kJacobiTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_frobenius(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q), accumulating columns into v.
void jacobi_rotate(CMatrix& a, CMatrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  // tan of the rotation angle: smaller-magnitude root of t^2 - 2wt - 1 = 0.
  const double w = (app - aqq) / (2.0 * r);
  double t;
  if (w >= 0.0)
    t = -1.0 / (w + std::sqrt(w * w + 1.0));
  else
    t = 1.0 / (-w + std::sqrt(w * w + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const Complex phase = apq / r;
  const Complex s = (t * c) * phase;
  const Complex sc = std::conj(s);

  const int n = a.rows();
  for (int i = 0; i < n; ++i) {
    if (i == p || i == q) continue;
    const Complex aip = a(i, p);
    const Complex aiq = a(i, q);
    a(i, p) = c * aip - sc * aiq;
    a(i, q) = s * aip + c * aiq;
    a(p, i) = std::conj(a(i, p));
    a(q, i) = std::conj(a(i, q));
  }
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (int i = 0; i < n; ++i) {
    const Complex vip = v(i, p);
    const Complex viq = v(i, q);
    v(i, p) = c * vip - sc * viq;
    v(i, q) = s * vip + c * viq;
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols())
    throw std::invalid_argument("HermitianMatrix: matrix must be square");
  if (mat_.rows() < 1)
    throw std::invalid_argument("HermitianMatrix: dim must be >= 1");
  double asym = 0.0;
  for (int i = 0; i < mat_.rows(); ++i)
    for (int j = i; j < mat_.cols(); ++j)
      asym = std::max(asym, std::abs(mat_(i, j) - std::conj(mat_(j, i))));
  const double scale = std::max(1.0, mat_.max_abs());
  if (asym > kAsymmetryTol * scale)
    throw std::invalid_argument(
        "HermitianMatrix: input is not Hermitian (asymmetry " +
        std::to_string(asym) + " exceeds tolerance)");
  // Symmetrize as (A + A*)/2. Keeps builders honest without punishing rounding.
  for (int i = 0; i < mat_.rows(); ++i) {
    mat_(i, i) = Complex(mat_(i, i).real(), 0.0);
    for (int j = i + 1; j < mat_.cols(); ++j) {
      const Complex avg = 0.5 * (mat_(i, j) + std::conj(mat_(j, i)));
      mat_(i, j) = avg;
      mat_(j, i) = std::conj(avg);
    }
  }
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  CMatrix m(static_cast<int>(values.size()), static_cast<int>(values.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = values[i];
  return HermitianMatrix(Trusted{}, std::move(m));
}

HermitianMatrix HermitianMatrix::zero(int n) {
  if (n < 1) throw std::invalid_argument("HermitianMatrix: dim must be >= 1");
  return HermitianMatrix(Trusted{}, CMatrix(n, n));
}

CMatrix HermitianMatrix::shifted(Complex z) const {
  CMatrix m = mat_;
  for (int i = 0; i < m.rows(); ++i) m(i, i) -= z;
  return m;
}

HermitianMatrix HermitianMatrix::shifted_real(double u) const {
  CMatrix m = mat_;
  for (int i = 0; i < m.rows(); ++i) m(i, i) += u;
  return HermitianMatrix(Trusted{}, std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(HermitianMatrix::Trusted{}, a.mat_ + b.mat_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(HermitianMatrix::Trusted{}, a.mat_ - b.mat_);
}

HermitianMatrix operator*(double c, const HermitianMatrix& a) {
  return HermitianMatrix(HermitianMatrix::Trusted{}, Complex(c) * a.mat_);
}

EigenDecomposition eig_ordered(const HermitianMatrix& input) {
  const int n = input.dim();
  CMatrix a = input.mat();
  CMatrix v = CMatrix::identity(n);

  const double tol = kJacobiTol * a.frobenius_norm();
  bool converged = off_diagonal_frobenius(a) <= tol;
  for (int sweep = 0; !converged && sweep < kJacobiMaxSweeps; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    converged = off_diagonal_frobenius(a) <= tol;
  }
  if (!converged)
    throw SpectralError("eig_ordered: Jacobi sweeps exceeded the cap");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double op_norm(const HermitianMatrix& a) {
  const auto eig = eig_ordered(a);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

WeylReport weyl_check(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("weyl_check: dimension mismatch");
  const auto ea = eig_ordered(a);
  const auto eb = eig_ordered(b);
  double gap = 0.0;
  for (int j = 0; j < a.dim(); ++j)
    gap = std::max(gap, std::abs(ea.values[j] - eb.values[j]));
  const double bound = op_norm(a - b);
  return {gap, bound, gap <= bound + 1e-9 * (1.0 + bound)};
}

}  // namespace spectra
