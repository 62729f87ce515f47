#include "spectra/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SPECTRA_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned long>(cap) < hw)
      hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

double spectral_scale(std::span<const EigenSample> samples) {
  double scale = 0.0;
  for (const auto& s : samples)
    if (!s.values.empty())
      scale = std::max(scale, std::max(std::abs(s.values.front()),
                                       std::abs(s.values.back())));
  return scale;
}

void require_uniform_samples(std::span<const EigenSample> samples) {
  if (samples.empty())
    throw std::invalid_argument("tracking: empty sample set");
  const std::size_t n = samples.front().values.size();
  for (const auto& s : samples)
    if (s.values.size() != n)
      throw std::invalid_argument("tracking: samples have mixed dimensions");
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 nodes");
  if (!(lo < hi)) throw std::invalid_argument("linspace: need lo < hi");
  std::vector<double> out(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = lo + i * step;
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<EigenSample> sample_grid(const ParamFamily& family,
                                     std::span<const double> grid) {
  if (family.param_dim != 1)
    throw std::invalid_argument("sample_grid: family must have one parameter");
  if (grid.size() < 1)
    throw std::invalid_argument("sample_grid: empty grid");
  for (std::size_t j = 1; j < grid.size(); ++j)
    if (!(grid[j - 1] < grid[j]))
      throw std::invalid_argument("sample_grid: grid must be strictly ascending");

  const int m = static_cast<int>(grid.size());
  std::vector<EigenSample> samples(m);
  auto compute = [&](int j) {
    const auto eig = eig_ordered(family.eval(grid[j]));
    EigenSample s;
    s.t = grid[j];
    s.values = eig.values;
    s.gap_floor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < s.values.size(); ++i)
      s.gap_floor = std::min(s.gap_floor, s.values[i] - s.values[i - 1]);
    if (s.values.size() < 2) s.gap_floor = 0.0;
    samples[j] = std::move(s);
  };

  const int threads = std::min(thread_budget(), m);
  if (threads <= 1 || m < 16) {
    for (int j = 0; j < m; ++j) compute(j);
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        for (int j = w; j < m; j += threads) compute(j);
      }));
    }
    for (auto& f : futures) f.get();
  }
  return samples;
}

std::vector<Branch> ordered_branches(std::span<const EigenSample> samples) {
  require_uniform_samples(samples);
  const int n = static_cast<int>(samples.front().values.size());
  const int m = static_cast<int>(samples.size());
  std::vector<Branch> out(n);
  for (int i = 0; i < n; ++i) {
    out[i].grid.resize(m);
    out[i].values.resize(m);
    out[i].indices.assign(m, i + 1);
    for (int j = 0; j < m; ++j) {
      out[i].grid[j] = samples[j].t;
      out[i].values[j] = samples[j].values[i];
    }
  }
  return out;
}

std::vector<CrossingEvent> detect_crossings(std::span<const EigenSample> samples,
                                            double crossing_tol) {
  if (samples.empty()) return {};
  require_uniform_samples(samples);
  if (crossing_tol <= 0.0)
    crossing_tol = 1e-6 * (1.0 + spectral_scale(samples));

  const int n = static_cast<int>(samples.front().values.size());
  const int m = static_cast<int>(samples.size());
  std::vector<CrossingEvent> events;
  for (int i = 0; i + 1 < n; ++i) {
    int j = 0;
    while (j < m) {
      const double gap = samples[j].values[i + 1] - samples[j].values[i];
      if (gap > crossing_tol) {
        ++j;
        continue;
      }
      // Maximal run of near-degenerate nodes -> one event.
      int end = j;
      double min_gap = gap;
      while (end + 1 < m) {
        const double g = samples[end + 1].values[i + 1] - samples[end + 1].values[i];
        if (g > crossing_tol) break;
        ++end;
        min_gap = std::min(min_gap, g);
      }
      CrossingEvent ev;
      ev.t_lo = samples[std::max(j - 1, 0)].t;
      ev.t_hi = samples[std::min(end + 1, m - 1)].t;
      ev.lower_index = i + 1;
      ev.min_gap = min_gap;
      events.push_back(ev);
      j = end + 1;
    }
  }
  return events;
}

std::vector<EigenSample> refine_crossing_brackets(
    const ParamFamily& family, std::span<const EigenSample> samples,
    std::span<const CrossingEvent> events) {
  require_uniform_samples(samples);
  std::vector<double> extra;
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    const double lo = samples[j].t;
    const double hi = samples[j + 1].t;
    for (const auto& ev : events) {
      if (lo >= ev.t_lo && hi <= ev.t_hi) {
        extra.push_back(0.5 * (lo + hi));
        break;
      }
    }
  }
  if (extra.empty())
    return std::vector<EigenSample>(samples.begin(), samples.end());

  const auto fresh = sample_grid(family, extra);
  std::vector<EigenSample> merged(samples.begin(), samples.end());
  merged.insert(merged.end(), fresh.begin(), fresh.end());
  std::sort(merged.begin(), merged.end(),
            [](const EigenSample& a, const EigenSample& b) { return a.t < b.t; });
  return merged;
}

Branch continuous_selection(std::span<const EigenSample> samples,
                            int start_index, SelectionStrategy strategy,
                            double switch_tol) {
  require_uniform_samples(samples);
  const int n = static_cast<int>(samples.front().values.size());
  const int m = static_cast<int>(samples.size());
  if (start_index < 1 || start_index > n)
    throw std::invalid_argument("continuous_selection: start index " +
                                std::to_string(start_index) +
                                " outside [1, " + std::to_string(n) + "]");
  if (switch_tol <= 0.0) switch_tol = 1e-6 * (1.0 + spectral_scale(samples));

  Branch branch;
  branch.grid.resize(m);
  branch.values.resize(m);
  branch.indices.resize(m);
  int cur = start_index - 1;  // 0-based while tracking
  branch.grid[0] = samples[0].t;
  branch.values[0] = samples[0].values[cur];
  branch.indices[0] = cur + 1;

  auto extrapolate = [&](int j, double t) {
    // Linear extrapolation of the selection from nodes j-2, j-1 to time t.
    if (j >= 2) {
      const double t0 = samples[j - 2].t, t1 = samples[j - 1].t;
      const double v0 = branch.values[j - 2], v1 = branch.values[j - 1];
      return v1 + (v1 - v0) / (t1 - t0) * (t - t1);
    }
    return branch.values[j - 1];
  };

  for (int j = 1; j < m; ++j) {
    const auto& vals = samples[j].values;
    if (strategy != SelectionStrategy::kOrdered) {
      // Cluster of ordered indices chained to cur by gaps <= switch_tol.
      int lo = cur, hi = cur;
      while (lo > 0 && vals[lo] - vals[lo - 1] <= switch_tol) --lo;
      while (hi + 1 < n && vals[hi + 1] - vals[hi] <= switch_tol) ++hi;
      if (lo < hi) {
        // Degenerate node: decide the outgoing index by extrapolating past
        // the crossing. The labels only disambiguate at the next node, since
        // the clustered values coincide here.
        const int jj = std::min(j + 1, m - 1);
        const double pred = extrapolate(j, samples[jj].t);
        const auto& ahead = samples[jj].values;
        int best = cur;
        double best_dist = std::numeric_limits<double>::infinity();
        int within_tol = 0;
        for (int k = lo; k <= hi; ++k) {
          const double dist = std::abs(ahead[k] - pred);
          if (dist <= switch_tol) ++within_tol;
          if (dist < best_dist || (dist == best_dist && k == cur)) {
            best_dist = dist;
            best = k;
          }
        }
        if (strategy == SelectionStrategy::kStrict && within_tol >= 2)
          throw AmbiguousCrossing(
              "continuous_selection: crossing near t = " +
                  std::to_string(samples[j].t) +
                  " cannot be resolved from samples alone",
              samples[j - 1].t, samples[jj].t);
        if (best != cur) {
          branch.switch_points.push_back({j, cur + 1, best + 1});
          cur = best;
        }
      }
    }
    branch.grid[j] = samples[j].t;
    branch.values[j] = vals[cur];
    branch.indices[j] = cur + 1;
  }
  return branch;
}

ProjectorTracking selection_via_projector(const ParamFamily& family, double s,
                                          std::span<const double> window_grid,
                                          int target_index,
                                          std::optional<Contour> contour) {
  if (family.param_dim != 1)
    throw std::invalid_argument(
        "selection_via_projector: family must have one parameter");
  const auto base_eig = eig_ordered(family.eval(s));

  ProjectorTracking out;
  out.contour = contour ? *contour : default_contour(base_eig.values, target_index);
  out.contour.validate();

  const double c = out.contour.center.real();
  const double r = out.contour.radius;
  int expected_rank = 0;
  for (double mu : base_eig.values)
    if (std::abs(mu - c) < r) ++expected_rank;
  if (expected_rank == 0)
    throw std::invalid_argument(
        "selection_via_projector: contour encloses no eigenvalue at the base "
        "point");

  const auto samples = sample_grid(family, window_grid);
  const int m = static_cast<int>(samples.size());
  out.nodes.resize(m);
  out.branches.assign(expected_rank, Branch{});
  for (auto& b : out.branches) {
    b.grid.resize(m);
    b.values.resize(m);
    b.indices.resize(m);
  }

  for (int j = 0; j < m; ++j) {
    const HermitianMatrix a = family.eval(window_grid[j]);
    const SpectralProjector p = contour_projector(a, out.contour);
    if (p.rank != expected_rank)
      throw ContourHitsSpectrum(
          "selection_via_projector: rank changed from " +
          std::to_string(expected_rank) + " to " + std::to_string(p.rank) +
          " at t = " + std::to_string(window_grid[j]) +
          "; an eigenvalue crossed the contour, the window is too large");
    const auto block = project_block(a, p);
    const auto block_eig = eig_ordered(*block);

    // Global ordered index of the first enclosed eigenvalue at this node.
    int offset = 0;
    for (double mu : samples[j].values)
      if (mu < c - r) ++offset;

    ProjectorNodeReport& node = out.nodes[j];
    node.t = window_grid[j];
    node.rank = p.rank;
    node.trace_real = p.matrix.trace().real();
    node.idempotency_defect = p.idempotency_defect;
    node.block_values = block_eig.values;

    for (int k = 0; k < expected_rank; ++k) {
      out.branches[k].grid[j] = window_grid[j];
      out.branches[k].values[j] = block_eig.values[k];
      out.branches[k].indices[j] = offset + k + 1;
    }
    if (j == 0) {
      out.enclosed_indices.resize(expected_rank);
      for (int k = 0; k < expected_rank; ++k)
        out.enclosed_indices[k] = offset + k + 1;
    }
  }
  return out;
}

}  // namespace spectra
