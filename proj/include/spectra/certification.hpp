#pragma once

#include <array>
#include <optional>
#include <span>

#include "spectra/tracking.hpp"

namespace spectra {

/// Which (j, k) grid pairs enter a Hoelder-quotient supremum.
///   kAll:    all j < k (O(m^2)).
///   kDyadic: k - j a power of two (O(m log m)).
///   kAuto:   kAll up to 2000 nodes, kDyadic above.
/// A certificate is a statement about the tested pairs on a compact grid,
/// never a proof of the local bound.
enum class PairPolicy { kAll, kDyadic, kAuto };

struct HolderCertificate {
  double alpha = 0.0;
  double constant = 0.0;               // sup over tested pairs of the quotient
  std::array<double, 2> witness{0, 0}; // pair attaining the sup
  long pairs_tested = 0;
  std::optional<double> claimed_bound;
  bool passed = true;  // claimed_bound absent, or constant <= bound*(1+1e-9)
};

/// sup over tested pairs of |values[j] - values[k]| / |t_j - t_k|^alpha.
/// Ties go to the lexicographically smallest pair. Throws on duplicate grid
/// nodes or alpha outside (0, 1].
HolderCertificate holder_constant(const Branch& branch, double alpha,
                                  PairPolicy policy = PairPolicy::kAuto,
                                  std::optional<double> claimed_bound = {});

struct TransferReport {
  double c_ordered = 0.0;    // max over i of the ordered-branch constant
  double c_selection = 0.0;  // constant of the reconstructed selection
  int n = 0;                 // matrix dimension
  bool holds = false;        // c_selection <= N * c_ordered * (1 + 1e-9)
};

/// Checks the chaining bound: a continuous selection over the sampled grid
/// is Hoelder with constant at most N times the common ordered-branch
/// constant.
TransferReport verify_transfer_bound(std::span<const EigenSample> samples,
                                     const Branch& selection, double alpha,
                                     PairPolicy policy = PairPolicy::kAuto);

/// sup over grid pairs of ||A(s) - A(t)|| / |s - t|^alpha. Dominates every
/// ordered-branch constant over the same pairs, by the Weyl bound.
double matrix_holder_constant(const ParamFamily& family,
                              std::span<const double> grid, double alpha,
                              PairPolicy policy = PairPolicy::kAuto);

/// Growth model |lambda'(t)| <= C + C |lambda(t)|, estimated from samples.
struct GrowthModel {
  double c = 0.0;  // max_j |lambda'(t_j)| / (1 + |lambda(t_j)|)
  double a = 0.0;  // Gronwall rate, set equal to c
};

/// Central differences at interior nodes, one-sided at the ends. The a.e.
/// derivative of a merely Lipschitz branch is not observable from samples,
/// so C carries an O(h) bias; callers refine the grid to shrink it.
GrowthModel estimate_growth_constant(const Branch& branch);

struct GronwallReport {
  double max_violation = 0.0;
  bool holds = false;
};

/// Checks |lambda(s) - lambda(t)| <= (1 + |lambda(t)|)(e^{a|s-t|} - 1) over
/// all directed grid pairs; holds when the worst violation stays below
/// 1e-9 * (1 + spectral scale).
GronwallReport gronwall_check(const Branch& branch, const GrowthModel& model);

}  // namespace spectra
