#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectra/hermitian.hpp"
#include "spectra/rng.hpp"

namespace spectra {

/// Evaluatable map from a parameter u in R^d to a Hermitian matrix, tagged
/// with its claimed Hoelder exponent. Immutable after construction; eval is
/// a pure function of u, so families are safe to evaluate concurrently.
struct ParamFamily {
  std::string kind;
  int param_dim = 1;
  int matrix_dim = 0;
  double claimed_alpha = 1.0;
  std::vector<std::array<double, 2>> domain;  // per-coordinate [lo, hi]
  std::function<HermitianMatrix(std::span<const double>)> evaluator;

  /// sup-norm Hoelder constant of u -> A(u) when known by construction.
  std::optional<double> known_matrix_constant;

  HermitianMatrix eval(std::span<const double> u) const;
  HermitianMatrix eval(double t) const;  // param_dim == 1 only
};

/// Smooth curve t -> c(t) in R^d used to pull a many-parameter family back
/// to one parameter.
struct SmoothCurve {
  int output_dim = 1;
  std::array<double, 2> interval{-1.0, 1.0};
  std::function<std::vector<double>(double)> evaluator;
  std::function<std::vector<double>(double)> derivative;  // optional
};

/// One-parameter family t -> A(c(t)); claimed exponent is preserved.
ParamFamily pullback(const ParamFamily& family, const SmoothCurve& curve);

/// 2x2 family A(t) = [[0, s*|t|^alpha], [s*|t|^alpha, 0]] on [-1, 1].
/// Eigenvalues are +-s*|t|^alpha; the canonical family that is C^{0,alpha}
/// with constant exactly |s| and nothing better.
ParamFamily build_rough_coupling(double alpha, double scale);

/// A(t) = W diag(slope_i t + offset_i) W* with a fixed seeded unitary W.
/// The spectrum of A(t) is exactly the set of affine line values, which makes
/// the family the canonical multi-crossing test bed.
struct CrossingLines {
  ParamFamily family;
  std::vector<double> slopes;
  std::vector<double> offsets;
  CMatrix mixer;

  double line(int i, double t) const { return slopes[i] * t + offsets[i]; }
  /// Parameter where lines i and j intersect (slopes must differ).
  double crossing_time(int i, int j) const;
};

/// offsets empty -> equally spaced in [-0.5, 0.5]; mixer_seed empty -> W = I.
CrossingLines build_crossing_lines(std::span<const double> slopes,
                                   std::optional<std::uint64_t> mixer_seed,
                                   std::span<const double> offsets = {});

/// Dirichlet finite-difference truncation of -d^2/dx^2 + V(u, x) on (0, 1):
/// n x n tridiagonal with diagonal 2/h^2 + V(u, x_i), off-diagonal -1/h^2,
/// h = 1/(n+1), x_i = i h. Parameter domain defaults to [-1, 1]^d.
ParamFamily build_schrodinger_1d(
    std::function<double(std::span<const double>, double)> potential, int n,
    int param_dim = 1);

/// A(t) = A0 + sum_k |t - tau_k|^alpha B_k with seeded Hermitian A0, B_k and
/// knots tau_k in (-0.9, 0.9). C^{0,alpha} with matrix constant
/// sum_k ||B_k|| by the elementary bound ||a|^a - |b|^a| <= |a - b|^a.
struct RandomHolderFamily {
  ParamFamily family;
  HermitianMatrix base;
  std::vector<HermitianMatrix> bumps;
  std::vector<double> knots;
  double matrix_constant = 0.0;  // sum_k ||B_k||
};

RandomHolderFamily build_random_holder(std::uint64_t seed, double alpha, int n,
                                       int terms);

/// Seeded dense Hermitian matrix with entries uniform in [-scale, scale].
/// Fill order is fixed (row-major upper triangle, diagonal first in each
/// row, real part before imaginary), so a seed pins the matrix bits.
HermitianMatrix random_hermitian(SplitMix64& rng, int n, double scale = 1.0);

/// Seeded unitary: uniform complex entries orthonormalized by modified
/// Gram-Schmidt over columns in ascending order.
CMatrix random_unitary(SplitMix64& rng, int n);

}  // namespace spectra
