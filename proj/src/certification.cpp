#include "spectra/certification.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spectra {

namespace {

constexpr int kAutoPairCutoff = 2000;

PairPolicy resolve(PairPolicy policy, std::size_t nodes) {
  if (policy != PairPolicy::kAuto) return policy;
  return nodes <= kAutoPairCutoff ? PairPolicy::kAll : PairPolicy::kDyadic;
}

// Visits pairs (j, k), j < k, in lexicographic order; returns the count.
template <typename F>
long for_pairs(std::size_t m, PairPolicy policy, F&& visit) {
  long count = 0;
  if (resolve(policy, m) == PairPolicy::kAll) {
    for (std::size_t j = 0; j + 1 < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        visit(j, k);
        ++count;
      }
  } else {
    for (std::size_t j = 0; j + 1 < m; ++j)
      for (std::size_t step = 1; j + step < m; step *= 2) {
        visit(j, j + step);
        ++count;
      }
  }
  return count;
}

void require_certifiable(std::span<const double> grid, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder: alpha must be in (0, 1]");
  if (grid.size() < 2)
    throw std::invalid_argument("holder: need at least 2 nodes");
  for (std::size_t j = 1; j < grid.size(); ++j)
    if (grid[j] == grid[j - 1])
      throw std::invalid_argument("holder: degenerate grid (duplicate nodes)");
}

double branch_scale(const Branch& b) {
  double s = 0.0;
  for (double v : b.values) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

HolderCertificate holder_constant(const Branch& branch, double alpha,
                                  PairPolicy policy,
                                  std::optional<double> claimed_bound) {
  require_certifiable(branch.grid, alpha);
  HolderCertificate cert;
  cert.alpha = alpha;
  cert.claimed_bound = claimed_bound;
  cert.pairs_tested =
      for_pairs(branch.grid.size(), policy, [&](std::size_t j, std::size_t k) {
        const double q = std::abs(branch.values[j] - branch.values[k]) /
                         std::pow(std::abs(branch.grid[j] - branch.grid[k]), alpha);
        if (q > cert.constant) {
          cert.constant = q;
          cert.witness = {branch.grid[j], branch.grid[k]};
        }
      });
  cert.passed =
      !claimed_bound || cert.constant <= *claimed_bound * (1.0 + 1e-9);
  return cert;
}

TransferReport verify_transfer_bound(std::span<const EigenSample> samples,
                                     const Branch& selection, double alpha,
                                     PairPolicy policy) {
  if (samples.empty())
    throw std::invalid_argument("verify_transfer_bound: empty samples");
  if (samples.size() != selection.grid.size())
    throw std::invalid_argument(
        "verify_transfer_bound: selection grid does not match the samples");
  const auto ordered = ordered_branches(samples);
  TransferReport report;
  report.n = static_cast<int>(ordered.size());
  for (const auto& mu : ordered)
    report.c_ordered =
        std::max(report.c_ordered, holder_constant(mu, alpha, policy).constant);
  report.c_selection = holder_constant(selection, alpha, policy).constant;
  report.holds =
      report.c_selection <= report.n * report.c_ordered * (1.0 + 1e-9);
  return report;
}

double matrix_holder_constant(const ParamFamily& family,
                              std::span<const double> grid, double alpha,
                              PairPolicy policy) {
  require_certifiable(grid, alpha);
  std::vector<HermitianMatrix> at;
  at.reserve(grid.size());
  for (double t : grid) at.push_back(family.eval(t));
  double constant = 0.0;
  for_pairs(grid.size(), policy, [&](std::size_t j, std::size_t k) {
    const double q = op_norm(at[j] - at[k]) /
                     std::pow(std::abs(grid[j] - grid[k]), alpha);
    constant = std::max(constant, q);
  });
  return constant;
}

GrowthModel estimate_growth_constant(const Branch& branch) {
  const std::size_t m = branch.grid.size();
  if (m < 3)
    throw std::invalid_argument(
        "estimate_growth_constant: need at least 3 nodes");
  auto rate = [&](double derivative, std::size_t j) {
    return std::abs(derivative) / (1.0 + std::abs(branch.values[j]));
  };
  GrowthModel model;
  // One-sided at the ends.
  model.c = std::max(rate((branch.values[1] - branch.values[0]) /
                              (branch.grid[1] - branch.grid[0]),
                          0),
                     rate((branch.values[m - 1] - branch.values[m - 2]) /
                              (branch.grid[m - 1] - branch.grid[m - 2]),
                          m - 1));
  for (std::size_t j = 1; j + 1 < m; ++j) {
    const double d = (branch.values[j + 1] - branch.values[j - 1]) /
                     (branch.grid[j + 1] - branch.grid[j - 1]);
    model.c = std::max(model.c, rate(d, j));
  }
  model.a = model.c;
  return model;
}

GronwallReport gronwall_check(const Branch& branch, const GrowthModel& model) {
  const std::size_t m = branch.grid.size();
  if (m < 2)
    throw std::invalid_argument("gronwall_check: need at least 2 nodes");
  GronwallReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < m; ++t) {
    const double base = 1.0 + std::abs(branch.values[t]);
    for (std::size_t s = 0; s < m; ++s) {
      if (s == t) continue;
      const double lhs = std::abs(branch.values[s] - branch.values[t]);
      const double rhs =
          base * std::expm1(model.a * std::abs(branch.grid[s] - branch.grid[t]));
      report.max_violation = std::max(report.max_violation, lhs - rhs);
    }
  }
  report.holds = report.max_violation <= 1e-9 * (1.0 + branch_scale(branch));
  return report;
}

}  // namespace spectra
