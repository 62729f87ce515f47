#pragma once

#include <optional>
#include <span>

#include "spectra/hermitian.hpp"

namespace spectra {

/// Circle in the complex plane, centered on the real axis so that the Riesz
/// projector of a Hermitian matrix comes out Hermitian. `nodes` is the
/// trapezoidal quadrature point count the integration starts from.
struct Contour {
  Complex center;
  double radius = 0.0;
  int nodes = 64;

  void validate() const;
};

/// Riesz spectral projector onto the eigenspaces enclosed by a contour,
/// together with its rank and an orthonormal basis of its range.
struct SpectralProjector {
  CMatrix matrix;       // Hermitian, P^2 = P up to idempotency_defect
  int rank = 0;         // number of singular values > 1/2
  CMatrix range_basis;  // N x rank, orthonormal columns spanning P(H)
  double idempotency_defect = 0.0;  // ||P^2 - P||_F
  double hermiticity_defect = 0.0;  // ||P* - P||_F before symmetrization
  int nodes_used = 0;               // quadrature points after adaptation
};

/// (A - z I)^{-1}. Requires dist(z, spectrum(A)) > 1e-8 * (1 + ||A||),
/// otherwise throws SpectrumTooClose to signal the contour must be re-chosen.
CMatrix resolvent(const HermitianMatrix& a, Complex z);

/// Raw trapezoidal sum -(1/2 pi i) \oint (A - z)^{-1} dz at a fixed node
/// count: nodes z_m = c + r e^{2 pi i m / M}, weights
/// (2 pi i r / M) e^{2 pi i m / M}, summed in ascending node order. No
/// admissibility check; diagnostic building block.
CMatrix contour_quadrature(const HermitianMatrix& a, const Contour& gamma,
                           int m_nodes);

/// Riesz projector by the quadrature above. The node count doubles from
/// gamma.nodes until ||P^2 - P||_F <= 1e-10 or M = 2048. Throws
/// ContourHitsSpectrum if an eigenvalue sits within 1e-6 * (1 + ||A||) of the
/// circle, RankAmbiguous if the computed projector has a singular value in
/// [0.25, 0.75] or fails its own invariants.
SpectralProjector contour_projector(const HermitianMatrix& a, const Contour& gamma);

/// Compresses A to the range of P: the rank x rank Hermitian matrix Q* A Q
/// with Q = range_basis. Its spectrum equals the enclosed eigenvalues of A.
/// Rank 0 (empty contour) yields nullopt.
std::optional<HermitianMatrix> project_block(const HermitianMatrix& a,
                                             const SpectralProjector& p);

/// Number of eigenvalues of A strictly inside gamma, computed as
/// round(Re trace(P)) from the quadrature projector and cross-checked
/// against the singular-value rank.
int enclosed_count(const HermitianMatrix& a, const Contour& gamma);

/// Default contour for tracking the eigenvalue group of `target_index`
/// (1-based) in an ascending spectrum: center at the midpoint of the group's
/// multiplicity cluster, radius reaching 45% of the gap to the nearest
/// outside eigenvalue beyond the cluster edge. When the cluster is the whole
/// spectrum the radius extends one unit beyond the cluster half-spread.
Contour default_contour(std::span<const double> eigenvalues, int target_index,
                        double cluster_tol = -1.0);

}  // namespace spectra
