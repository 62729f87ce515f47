#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "spectra/errors.hpp"
#include "spectra/tracking.hpp"

using namespace spectra;

namespace {

CrossingLines two_lines(std::optional<std::uint64_t> seed = std::nullopt) {
  return build_crossing_lines(std::vector<double>{1.0, -1.0}, seed,
                              std::vector<double>{0.0, 0.0});
}

CrossingLines three_lines() {
  return build_crossing_lines(std::vector<double>{1.0, 0.0, -1.0}, 17u,
                              std::vector<double>{-0.5, 0.3, 0.5});
}

}  // namespace

TEST_CASE("linspace hits both endpoints exactly") {
  const auto g = linspace(0.1, 0.3, 5);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 0.3);
  CHECK(g.size() == 5);
  CHECK_THROWS_AS(linspace(1.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("sample_grid on the two-line family") {
  const auto lines = two_lines();
  const std::vector<double> grid{-1.0, 0.0, 1.0};
  const auto samples = sample_grid(lines.family, grid);
  REQUIRE(samples.size() == 3);
  CHECK(samples[0].values[0] == doctest::Approx(-1.0));
  CHECK(samples[0].values[1] == doctest::Approx(1.0));
  CHECK(samples[1].values[0] == doctest::Approx(0.0));
  CHECK(samples[1].values[1] == doctest::Approx(0.0));
  CHECK(samples[2].values[0] == doctest::Approx(-1.0));
  CHECK(samples[2].values[1] == doctest::Approx(1.0));
  CHECK(samples[1].gap_floor == doctest::Approx(0.0));
}

TEST_CASE("sample_grid validates its inputs") {
  const auto lines = two_lines();
  const std::vector<double> bad_order{0.5, 0.0};
  CHECK_THROWS_AS(sample_grid(lines.family, bad_order), std::invalid_argument);
  const std::vector<double> out_of_domain{0.0, 2.0};
  CHECK_THROWS_AS(sample_grid(lines.family, out_of_domain), std::invalid_argument);
}

TEST_CASE("sample_grid is byte-stable across thread budgets") {
  const auto fam = build_random_holder(70, 0.5, 5, 2).family;
  const auto grid = linspace(-1.0, 1.0, 64);
  setenv("SPECTRA_THREADS", "1", 1);
  const auto serial = sample_grid(fam, grid);
  setenv("SPECTRA_THREADS", "4", 1);
  const auto parallel = sample_grid(fam, grid);
  unsetenv("SPECTRA_THREADS");
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t j = 0; j < serial.size(); ++j)
    CHECK(serial[j].values == parallel[j].values);
}

TEST_CASE("sample_grid of a constant family is constant") {
  const auto fam = build_random_holder(3, 0.5, 3, 0).family;
  const auto samples = sample_grid(fam, linspace(-1.0, 1.0, 9));
  for (const auto& s : samples) CHECK(s.values == samples.front().values);
}

TEST_CASE("sample_grid matches the discrete Dirichlet spectrum") {
  const auto fam = build_schrodinger_1d(
      [](std::span<const double>, double) { return 0.0; }, 12);
  const auto samples = sample_grid(fam, linspace(-1.0, 1.0, 5));
  const auto exact = oracles::laplacian_1d_spectrum(12);
  for (const auto& s : samples)
    for (int k = 0; k < 12; ++k)
      CHECK(std::abs(s.values[k] - exact[k]) <= 1e-8 * exact[k]);
}

TEST_CASE("ordered branches of the two-line family") {
  const auto lines = two_lines(21u);
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 41));
  const auto branches = ordered_branches(samples);
  REQUIRE(branches.size() == 2);
  for (std::size_t j = 0; j < branches[0].grid.size(); ++j) {
    const double t = branches[0].grid[j];
    CHECK(std::abs(branches[0].values[j] + std::abs(t)) <= 1e-10);
    CHECK(std::abs(branches[1].values[j] - std::abs(t)) <= 1e-10);
    CHECK(branches[0].indices[j] == 1);
    CHECK(branches[1].indices[j] == 2);
  }
  CHECK(branches[0].switch_points.empty());
}

TEST_CASE("ordered branch of the rough coupling is |t|^alpha") {
  const auto fam = build_rough_coupling(0.5, 1.0);
  const auto samples = sample_grid(fam, linspace(-1.0, 1.0, 33));
  const auto branches = ordered_branches(samples);
  for (std::size_t j = 0; j < branches[1].grid.size(); ++j)
    CHECK(std::abs(branches[1].values[j] -
                   std::sqrt(std::abs(branches[1].grid[j]))) <= 1e-12);
}

TEST_CASE("detect_crossings: one merged event around an exact crossing") {
  const auto lines = two_lines();
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 101));
  const auto events = detect_crossings(samples, 1e-6);
  REQUIRE(events.size() == 1);
  CHECK(events[0].lower_index == 1);
  CHECK(events[0].t_lo == doctest::Approx(-0.02));
  CHECK(events[0].t_hi == doctest::Approx(0.02));
  CHECK(events[0].min_gap <= 1e-12);
}

TEST_CASE("detect_crossings: gapped family reports nothing") {
  // Parallel lines at distance 0.5 never cross.
  const auto gapped = build_crossing_lines(std::vector<double>{1.0, 1.0},
                                           std::nullopt,
                                           std::vector<double>{0.0, 0.5});
  const auto samples = sample_grid(gapped.family, linspace(-1.0, 1.0, 51));
  CHECK(detect_crossings(samples, 1e-6).empty());
}

TEST_CASE("detect_crossings: three non-concurrent crossings, three events") {
  const auto lines = three_lines();
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 101));
  const auto events = detect_crossings(samples, 1e-6);
  REQUIRE(events.size() == 3);
  // Pairwise intersections at t = 0.2 (ordered pair 2-3), 0.5 (1-2), 0.8 (2-3).
  CHECK(events[0].lower_index == 1);
  CHECK(std::abs(0.5 * (events[0].t_lo + events[0].t_hi) - 0.5) <= 0.011);
  CHECK(events[1].lower_index == 2);
  CHECK(std::abs(0.5 * (events[1].t_lo + events[1].t_hi) - 0.2) <= 0.011);
  CHECK(events[2].lower_index == 2);
  CHECK(std::abs(0.5 * (events[2].t_lo + events[2].t_hi) - 0.8) <= 0.011);
}

TEST_CASE("detect_crossings merges a run of near-degenerate nodes") {
  const auto fam = build_rough_coupling(1.0, 1.0);  // gap 2|t| near zero
  const auto samples = sample_grid(fam, linspace(-1.0, 1.0, 101));
  const auto events = detect_crossings(samples, 0.05);
  REQUIRE(events.size() == 1);
  CHECK(events[0].t_lo <= -0.02);
  CHECK(events[0].t_hi >= 0.02);
}

TEST_CASE("refine_crossing_brackets splits flagged intervals once") {
  const auto lines = two_lines();
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 11));
  const auto events = detect_crossings(samples, 0.25);
  REQUIRE(!events.empty());
  const auto refined = refine_crossing_brackets(lines.family, samples, events);
  CHECK(refined.size() > samples.size());
  for (std::size_t j = 1; j < refined.size(); ++j)
    CHECK(refined[j - 1].t < refined[j].t);
}

TEST_CASE("continuous_selection follows the physical line through a crossing") {
  const auto lines = two_lines(33u);
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 101));
  const auto branch =
      continuous_selection(samples, 1, SelectionStrategy::kSecant);
  for (std::size_t j = 0; j < branch.grid.size(); ++j)
    CHECK(std::abs(branch.values[j] - branch.grid[j]) <= 1e-8);
  CHECK(branch.values.back() == doctest::Approx(1.0));
  REQUIRE(branch.switch_points.size() == 1);
  CHECK(branch.switch_points[0].from_index == 1);
  CHECK(branch.switch_points[0].to_index == 2);
  CHECK(samples[branch.switch_points[0].node].t == doctest::Approx(0.0));
}

TEST_CASE("continuous_selection without crossings stays on its index") {
  const auto fam = build_random_holder(9, 0.5, 3, 2).family;
  const auto samples = sample_grid(fam, linspace(-1.0, 1.0, 61));
  for (int k = 1; k <= 3; ++k) {
    const auto branch =
        continuous_selection(samples, k, SelectionStrategy::kSecant);
    const auto ordered = ordered_branches(samples);
    CHECK(branch.values == ordered[k - 1].values);
    CHECK(branch.switch_points.empty());
  }
}

TEST_CASE("continuous_selection recovers all three lines end to end") {
  const auto lines = three_lines();
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 101));
  // Match each line to its ordered index at t = -1.
  for (int i = 0; i < 3; ++i) {
    const double v0 = lines.line(i, -1.0);
    int start = 1;
    for (int k = 0; k < 3; ++k)
      if (std::abs(samples[0].values[k] - v0) <= 1e-9) start = k + 1;
    const auto branch =
        continuous_selection(samples, start, SelectionStrategy::kSecant);
    for (std::size_t j = 0; j < branch.grid.size(); ++j)
      CHECK(std::abs(branch.values[j] - lines.line(i, branch.grid[j])) <= 1e-8);
    CHECK(branch.switch_points.size() <= 2);  // k <= N - 1 switches
  }
}

TEST_CASE("ordered strategy never switches") {
  const auto lines = two_lines();
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 101));
  const auto branch =
      continuous_selection(samples, 1, SelectionStrategy::kOrdered);
  for (std::size_t j = 0; j < branch.grid.size(); ++j)
    CHECK(branch.values[j] == doctest::Approx(-std::abs(branch.grid[j])));
  CHECK(branch.switch_points.empty());
}

TEST_CASE("strict strategy refuses a tangential crossing") {
  // Branches +-t^2 touch quadratically at t = 0; with a switch tolerance
  // wider than the curvature scale both candidates match the extrapolation.
  ParamFamily fam;
  fam.kind = "tangent";
  fam.param_dim = 1;
  fam.matrix_dim = 2;
  fam.claimed_alpha = 1.0;
  fam.domain = {{-1.0, 1.0}};
  fam.evaluator = [](std::span<const double> u) {
    const std::vector<double> d{u[0] * u[0], -u[0] * u[0]};
    return HermitianMatrix::diagonal(d);
  };
  const auto samples = sample_grid(fam, linspace(-1.0, 1.0, 201));
  CHECK_THROWS_AS(
      continuous_selection(samples, 1, SelectionStrategy::kStrict, 1e-3),
      AmbiguousCrossing);
  // Secant resolves it (either choice is a continuous eigenvalue).
  CHECK_NOTHROW(
      continuous_selection(samples, 1, SelectionStrategy::kSecant, 1e-3));
}

TEST_CASE("continuous_selection validates the start index") {
  const auto lines = two_lines();
  const auto samples = sample_grid(lines.family, linspace(-1.0, 1.0, 11));
  CHECK_THROWS_AS(continuous_selection(samples, 0, SelectionStrategy::kSecant),
                  std::invalid_argument);
  CHECK_THROWS_AS(continuous_selection(samples, 3, SelectionStrategy::kSecant),
                  std::invalid_argument);
}

TEST_CASE("Weyl transfer bound over sampled pairs") {
  const auto fam = build_random_holder(41, 0.5, 4, 2).family;
  const auto grid = linspace(-1.0, 1.0, 21);
  const auto samples = sample_grid(fam, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t k = j + 1; k < grid.size(); ++k) {
      double gap = 0.0;
      for (int i = 0; i < 4; ++i)
        gap = std::max(gap,
                       std::abs(samples[j].values[i] - samples[k].values[i]));
      const double bound = op_norm(fam.eval(grid[j]) - fam.eval(grid[k]));
      CHECK(gap <= bound + 1e-9);
    }
  }
}

TEST_CASE("branch continuity at grid scale for the rough family") {
  const auto fam = build_rough_coupling(0.5, 1.0);
  const auto samples = sample_grid(fam, linspace(-1.0, 1.0, 129));
  const auto branches = ordered_branches(samples);
  for (const auto& b : branches) {
    for (std::size_t j = 1; j < b.grid.size(); ++j) {
      const double step = b.grid[j] - b.grid[j - 1];
      CHECK(std::abs(b.values[j] - b.values[j - 1]) <=
            1.0 * std::pow(step, 0.5) + 2e-10);
    }
  }
}

TEST_CASE("selection_via_projector tracks a shifted eigenvalue") {
  const auto fam = oracles::shift_family({1.0, 2.0, 3.0});
  const auto window = linspace(-0.2, 0.2, 21);
  const auto tracked = selection_via_projector(fam, 0.0, window, 1);
  CHECK(tracked.contour.center.real() == doctest::Approx(1.0));
  CHECK(tracked.contour.radius == doctest::Approx(0.45));
  REQUIRE(tracked.branches.size() == 1);
  CHECK(tracked.enclosed_indices == std::vector<int>{1});
  for (std::size_t j = 0; j < window.size(); ++j) {
    CHECK(std::abs(tracked.branches[0].values[j] - (1.0 + window[j])) <= 1e-10);
    CHECK(tracked.branches[0].indices[j] == 1);
    CHECK(tracked.nodes[j].rank == 1);
  }
}

TEST_CASE("selection_via_projector reproduces both lines through the crossing") {
  const auto lines = two_lines(42u);
  const auto window = linspace(-0.5, 0.5, 41);
  const auto tracked = selection_via_projector(
      lines.family, -0.5, window, 1, Contour{Complex(0.0), 0.8, 64});
  REQUIRE(tracked.branches.size() == 2);
  const auto samples = sample_grid(lines.family, window);
  for (std::size_t j = 0; j < window.size(); ++j)
    for (int k = 0; k < 2; ++k)
      CHECK(std::abs(tracked.branches[k].values[j] - samples[j].values[k]) <=
            1e-8);
}

TEST_CASE("selection_via_projector rejects windows that reach the contour") {
  const auto fam = oracles::shift_family({1.0, 2.0, 3.0});
  // Default contour at s = 0 has radius 0.45 around 1; the tracked
  // eigenvalue 1 + t meets it at |t| = 0.45.
  CHECK_NOTHROW(selection_via_projector(fam, 0.0, linspace(-0.4, 0.4, 17), 1));
  CHECK_THROWS_AS(
      selection_via_projector(fam, 0.0, linspace(-0.5, 0.5, 21), 1),
      ContourHitsSpectrum);
}

TEST_CASE("selection_via_projector rank stays constant on admissible windows") {
  const auto lines = two_lines(42u);
  const auto tracked = selection_via_projector(
      lines.family, 0.3, linspace(0.1, 0.5, 9), 2,
      Contour{Complex(0.0), 0.8, 64});
  for (const auto& node : tracked.nodes) CHECK(node.rank == 2);
}
