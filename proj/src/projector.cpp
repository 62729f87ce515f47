#include "spectra/projector.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

constexpr int kMaxNodes = 2048;
constexpr double kAdaptTarget = 1e-10;

// (A - z)^{-1} by partial-pivot LU with one step of iterative refinement.
CMatrix shifted_inverse(const HermitianMatrix& a, Complex z) {
  const CMatrix m = a.shifted(z);
  const CMatrix eye = CMatrix::identity(a.dim());
  const LuFactorization lu(m);
  CMatrix r = lu.solve(eye);
  r += lu.solve(eye - matmul(m, r));
  return r;
}

}  // namespace

CMatrix contour_quadrature(const HermitianMatrix& a, const Contour& gamma,
                           int m_nodes) {
  const int n = a.dim();
  CMatrix p(n, n);
  for (int m = 0; m < m_nodes; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / m_nodes;
    const Complex unit = std::polar(1.0, theta);
    const Complex z = gamma.center + gamma.radius * unit;
    const CMatrix res = shifted_inverse(a, z);
    const Complex coeff = -(gamma.radius / m_nodes) * unit;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) += coeff * res(i, j);
  }
  return p;
}

void Contour::validate() const {
  if (!(radius > 0.0))
    throw std::invalid_argument("Contour: radius must be positive");
  if (nodes < 8)
    throw std::invalid_argument("Contour: need at least 8 quadrature nodes");
  if (center.imag() != 0.0)
    throw std::invalid_argument("Contour: center must lie on the real axis");
}

CMatrix resolvent(const HermitianMatrix& a, Complex z) {
  const auto eig = eig_ordered(a);
  const double norm =
      std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  double dist = std::numeric_limits<double>::infinity();
  for (double mu : eig.values) dist = std::min(dist, std::abs(Complex(mu) - z));
  if (dist <= 1e-8 * (1.0 + norm))
    throw SpectrumTooClose("resolvent: z is within " + std::to_string(dist) +
                           " of the spectrum");
  return shifted_inverse(a, z);
}

SpectralProjector contour_projector(const HermitianMatrix& a,
                                    const Contour& gamma) {
  gamma.validate();
  const auto eig = eig_ordered(a);
  const double norm =
      std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  const double margin = 1e-6 * (1.0 + norm);
  for (double mu : eig.values) {
    const double dist_to_circle =
        std::abs(std::abs(mu - gamma.center.real()) - gamma.radius);
    if (dist_to_circle <= margin)
      throw ContourHitsSpectrum(
          "contour_projector: eigenvalue " + std::to_string(mu) +
          " lies within " + std::to_string(dist_to_circle) + " of the circle");
  }

  SpectralProjector out;
  int m_nodes = std::max(gamma.nodes, 8);
  CMatrix p;
  while (true) {
    p = contour_quadrature(a, gamma, m_nodes);
    out.idempotency_defect = (matmul(p, p) - p).frobenius_norm();
    out.nodes_used = m_nodes;
    if (out.idempotency_defect <= kAdaptTarget || m_nodes >= kMaxNodes) break;
    m_nodes *= 2;
  }

  // Conjugate-symmetric nodes make P Hermitian up to rounding; measure the
  // defect, then symmetrize so the rank extraction can use a Hermitian
  // eigendecomposition (singular values of a Hermitian matrix are |eig|).
  out.hermiticity_defect = (p.adjoint() - p).frobenius_norm();
  if (out.hermiticity_defect > 1e-8)
    throw RankAmbiguous("contour_projector: projector is not Hermitian (defect " +
                        std::to_string(out.hermiticity_defect) + ")");
  CMatrix sym = Complex(0.5) * (p + p.adjoint());
  if (out.idempotency_defect > 1e-8 * (1.0 + p.frobenius_norm()))
    throw RankAmbiguous(
        "contour_projector: quadrature failed to converge to a projection "
        "(||P^2-P|| = " +
        std::to_string(out.idempotency_defect) + ")");

  const HermitianMatrix hp(std::move(sym));
  const auto peig = eig_ordered(hp);
  int rank = 0;
  for (double lambda : peig.values) {
    const double sigma = std::abs(lambda);
    if (sigma >= 0.25 && sigma <= 0.75)
      throw RankAmbiguous(
          "contour_projector: singular value " + std::to_string(sigma) +
          " is too far from {0, 1} to assign a rank");
    if (sigma > 0.5) ++rank;
  }

  const int n = a.dim();
  out.matrix = hp.mat();
  out.rank = rank;
  out.range_basis = CMatrix(n, rank);
  // Eigenvalues ascend, so the range eigenvectors are the trailing columns.
  for (int k = 0; k < rank; ++k)
    for (int i = 0; i < n; ++i)
      out.range_basis(i, k) = peig.vectors(i, n - rank + k);
  // Re-orthonormalize; the Jacobi basis is orthonormal to ~1e-14 already.
  for (int j = 0; j < rank; ++j) {
    for (int k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (int i = 0; i < n; ++i)
        proj += std::conj(out.range_basis(i, k)) * out.range_basis(i, j);
      for (int i = 0; i < n; ++i)
        out.range_basis(i, j) -= proj * out.range_basis(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += std::norm(out.range_basis(i, j));
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) out.range_basis(i, j) /= nrm;
  }

  const double trace = out.matrix.trace().real();
  if (std::abs(trace - std::round(trace)) > 1e-6 ||
      static_cast<int>(std::llround(trace)) != rank)
    throw RankAmbiguous("contour_projector: trace " + std::to_string(trace) +
                        " disagrees with rank " + std::to_string(rank));
  return out;
}

std::optional<HermitianMatrix> project_block(const HermitianMatrix& a,
                                             const SpectralProjector& p) {
  if (p.matrix.rows() != a.dim())
    throw std::invalid_argument("project_block: dimension mismatch");
  if (p.rank == 0) return std::nullopt;
  const CMatrix block =
      matmul(p.range_basis.adjoint(), matmul(a.mat(), p.range_basis));
  return HermitianMatrix(block);
}

int enclosed_count(const HermitianMatrix& a, const Contour& gamma) {
  const SpectralProjector p = contour_projector(a, gamma);
  return static_cast<int>(std::llround(p.matrix.trace().real()));
}

Contour default_contour(std::span<const double> eigenvalues, int target_index,
                        double cluster_tol) {
  const int n = static_cast<int>(eigenvalues.size());
  if (target_index < 1 || target_index > n)
    throw std::invalid_argument("default_contour: target index out of range");
  if (cluster_tol < 0.0) {
    const double norm =
        std::max(std::abs(eigenvalues.front()), std::abs(eigenvalues.back()));
    cluster_tol = 1e-8 * (1.0 + norm);
  }
  int lo = target_index - 1;
  int hi = target_index - 1;
  while (lo > 0 && eigenvalues[lo] - eigenvalues[lo - 1] <= cluster_tol) --lo;
  while (hi + 1 < n && eigenvalues[hi + 1] - eigenvalues[hi] <= cluster_tol) ++hi;

  const double spread = eigenvalues[hi] - eigenvalues[lo];
  const double center = 0.5 * (eigenvalues[lo] + eigenvalues[hi]);
  double gap = std::numeric_limits<double>::infinity();
  if (lo > 0) gap = std::min(gap, eigenvalues[lo] - eigenvalues[lo - 1]);
  if (hi + 1 < n) gap = std::min(gap, eigenvalues[hi + 1] - eigenvalues[hi]);

  Contour gamma;
  gamma.center = center;
  gamma.radius = std::isfinite(gap) ? 0.5 * spread + 0.45 * gap
                                    : 0.5 * spread + 1.0;
  gamma.nodes = 64;
  return gamma;
}

}  // namespace spectra
