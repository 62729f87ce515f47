#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spectra/families.hpp"
#include "spectra/projector.hpp"

namespace spectra {

/// Full ordered spectrum of A(t) at a single grid node.
struct EigenSample {
  double t = 0.0;
  std::vector<double> values;  // ascending
  double gap_floor = 0.0;      // smallest consecutive gap
};

struct SwitchPoint {
  int node = 0;        // grid node where the selection changes ordered index
  int from_index = 0;  // 1-based
  int to_index = 0;    // 1-based
};

/// A continuous eigenvalue selection over a sample grid: the value at each
/// node together with the ordered index it occupies there. values[j] equals
/// the ordered eigenvalue sample at indices[j] exactly (same bits).
struct Branch {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<int> indices;  // 1-based ordered index per node
  std::vector<SwitchPoint> switch_points;
};

/// Bracket where two consecutive ordered branches come within crossing_tol.
struct CrossingEvent {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int lower_index = 0;  // the pair is (lower_index, lower_index + 1), 1-based
  double min_gap = 0.0;
};

enum class SelectionStrategy { kOrdered, kSecant, kStrict };

/// Uniform grid of n nodes on [lo, hi]; endpoints are assigned exactly.
std::vector<double> linspace(double lo, double hi, int n);

/// Eigendecomposes A(t) at every node of a strictly ascending grid. Nodes
/// are independent; work is spread over min(SPECTRA_THREADS, hardware)
/// threads and merged in grid order, so the result does not depend on the
/// thread count.
std::vector<EigenSample> sample_grid(const ParamFamily& family,
                                     std::span<const double> grid);

/// Branch i of the ordered arrangement mu_1 <= ... <= mu_N: indices are
/// constant, no switch points.
std::vector<Branch> ordered_branches(std::span<const EigenSample> samples);

/// Reports every consecutive pair whose gap dips to crossing_tol or below.
/// A maximal run of near-degenerate nodes merges into one event bracketed by
/// the neighboring grid nodes. crossing_tol <= 0 selects the default
/// 1e-6 * (1 + spectral scale).
std::vector<CrossingEvent> detect_crossings(std::span<const EigenSample> samples,
                                            double crossing_tol = -1.0);

/// One level of dyadic refinement: inserts the midpoints of every grid
/// interval intersecting an event bracket and evaluates the family there.
std::vector<EigenSample> refine_crossing_brackets(
    const ParamFamily& family, std::span<const EigenSample> samples,
    std::span<const CrossingEvent> events);

/// Reconstructs a continuous eigenvalue selection starting on ordered index
/// start_index at the first node. At a node where the tracked value
/// coincides with an adjacent ordered branch (within switch_tol) the
/// strategy decides whether the selection passes through the crossing:
///   kOrdered: never switches (yields the ordered branch),
///   kSecant:  follows the linear extrapolation of the two previous nodes,
///   kStrict:  like kSecant, but throws AmbiguousCrossing when several
///             candidates sit within switch_tol of the extrapolation.
/// switch_tol <= 0 selects the default 1e-6 * (1 + spectral scale).
Branch continuous_selection(std::span<const EigenSample> samples,
                            int start_index, SelectionStrategy strategy,
                            double switch_tol = -1.0);

struct ProjectorNodeReport {
  double t = 0.0;
  int rank = 0;
  double trace_real = 0.0;
  double idempotency_defect = 0.0;
  std::vector<double> block_values;  // ascending enclosed eigenvalues
};

struct ProjectorTracking {
  Contour contour;
  std::vector<int> enclosed_indices;  // 1-based global ordered indices
  std::vector<Branch> branches;       // one per enclosed eigenvalue
  std::vector<ProjectorNodeReport> nodes;
};

/// Tracks the eigenvalue group of target_index through the window by
/// compressing A(t) to the range of the contour projector at every node.
/// The contour is fixed from the spectrum at base point s (or given
/// explicitly) and must stay admissible across the window; an eigenvalue
/// meeting the circle, or a rank change between nodes, raises
/// ContourHitsSpectrum -- the window is too large.
ProjectorTracking selection_via_projector(
    const ParamFamily& family, double s, std::span<const double> window_grid,
    int target_index, std::optional<Contour> contour = std::nullopt);

}  // namespace spectra
