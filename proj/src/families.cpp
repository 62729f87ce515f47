#include "spectra/families.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace spectra {

namespace {

// Closed-interval membership with a small absolute slack so that grid
// endpoints computed in floating point do not get rejected.
bool in_interval(double x, const std::array<double, 2>& box) {
  const double slack = 1e-12 * (1.0 + std::abs(box[0]) + std::abs(box[1]));
  return x >= box[0] - slack && x <= box[1] + slack;
}

std::vector<std::array<double, 2>> unit_box(int d) {
  return std::vector<std::array<double, 2>>(d, {-1.0, 1.0});
}

}  // namespace

HermitianMatrix ParamFamily::eval(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != param_dim)
    throw std::invalid_argument("ParamFamily::eval: parameter has dimension " +
                                std::to_string(u.size()) + ", expected " +
                                std::to_string(param_dim));
  for (int k = 0; k < param_dim; ++k)
    if (!in_interval(u[k], domain[k]))
      throw std::invalid_argument(
          "ParamFamily::eval: coordinate " + std::to_string(k) + " = " +
          std::to_string(u[k]) + " is outside the domain box");
  return evaluator(u);
}

HermitianMatrix ParamFamily::eval(double t) const {
  return eval(std::span<const double>(&t, 1));
}

ParamFamily pullback(const ParamFamily& family, const SmoothCurve& curve) {
  if (curve.output_dim != family.param_dim)
    throw std::invalid_argument(
        "pullback: curve output dimension does not match family parameter "
        "dimension");
  ParamFamily out;
  out.kind = family.kind + "|pullback";
  out.param_dim = 1;
  out.matrix_dim = family.matrix_dim;
  out.claimed_alpha = family.claimed_alpha;
  out.domain = {curve.interval};
  out.known_matrix_constant = std::nullopt;
  out.evaluator = [family, curve](std::span<const double> u) {
    const auto point = curve.evaluator(u[0]);
    return family.eval(point);
  };
  return out;
}

ParamFamily build_rough_coupling(double alpha, double scale) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("build_rough_coupling: alpha must be in (0, 1]");
  ParamFamily f;
  f.kind = "rough_coupling";
  f.param_dim = 1;
  f.matrix_dim = 2;
  f.claimed_alpha = alpha;
  f.domain = unit_box(1);
  f.known_matrix_constant = std::abs(scale);
  f.evaluator = [alpha, scale](std::span<const double> u) {
    const double c = scale * std::pow(std::abs(u[0]), alpha);
    CMatrix m(2, 2);
    m(0, 1) = c;
    m(1, 0) = c;
    return HermitianMatrix(std::move(m));
  };
  return f;
}

double CrossingLines::crossing_time(int i, int j) const {
  const double ds = slopes[i] - slopes[j];
  if (ds == 0.0)
    throw std::invalid_argument("CrossingLines: parallel lines never cross");
  return (offsets[j] - offsets[i]) / ds;
}

CrossingLines build_crossing_lines(std::span<const double> slopes,
                                   std::optional<std::uint64_t> mixer_seed,
                                   std::span<const double> offsets) {
  const int n = static_cast<int>(slopes.size());
  if (n < 2)
    throw std::invalid_argument("build_crossing_lines: need at least 2 lines");
  CrossingLines out;
  out.slopes.assign(slopes.begin(), slopes.end());
  if (offsets.empty()) {
    // Equally spaced in [-0.5, 0.5]; distinct lines, interior crossings for
    // slope separations above the offset spacing.
    out.offsets.resize(n);
    for (int i = 0; i < n; ++i) out.offsets[i] = -0.5 + i * (1.0 / (n - 1));
  } else {
    if (static_cast<int>(offsets.size()) != n)
      throw std::invalid_argument(
          "build_crossing_lines: offsets length does not match slopes");
    out.offsets.assign(offsets.begin(), offsets.end());
  }
  if (mixer_seed) {
    SplitMix64 rng(*mixer_seed);
    out.mixer = random_unitary(rng, n);
  } else {
    out.mixer = CMatrix::identity(n);
  }

  ParamFamily f;
  f.kind = "crossing_lines";
  f.param_dim = 1;
  f.matrix_dim = n;
  f.claimed_alpha = 1.0;
  f.domain = unit_box(1);
  // ||A(s) - A(t)|| = max_i |slope_i| * |s - t| by unitary invariance.
  double max_abs_slope = 0.0;
  for (double s : out.slopes) max_abs_slope = std::max(max_abs_slope, std::abs(s));
  f.known_matrix_constant = max_abs_slope;
  const auto slopes_copy = out.slopes;
  const auto offsets_copy = out.offsets;
  const auto mixer = out.mixer;
  f.evaluator = [slopes_copy, offsets_copy, mixer](std::span<const double> u) {
    const int dim = static_cast<int>(slopes_copy.size());
    CMatrix d(dim, dim);
    for (int i = 0; i < dim; ++i)
      d(i, i) = slopes_copy[i] * u[0] + offsets_copy[i];
    return HermitianMatrix(matmul(matmul(mixer, d), mixer.adjoint()));
  };
  out.family = std::move(f);
  return out;
}

ParamFamily build_schrodinger_1d(
    std::function<double(std::span<const double>, double)> potential, int n,
    int param_dim) {
  if (n < 2)
    throw std::invalid_argument("build_schrodinger_1d: need n >= 2 grid points");
  if (param_dim < 1)
    throw std::invalid_argument("build_schrodinger_1d: param_dim must be >= 1");
  ParamFamily f;
  f.kind = "schrodinger";
  f.param_dim = param_dim;
  f.matrix_dim = n;
  f.claimed_alpha = 1.0;
  f.domain = unit_box(param_dim);
  f.evaluator = [potential, n](std::span<const double> u) {
    const double h = 1.0 / (n + 1);
    const double diag = 2.0 / (h * h);
    const double off = -1.0 / (h * h);
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      const double x = (i + 1) * h;
      m(i, i) = diag + potential(u, x);
      if (i + 1 < n) {
        m(i, i + 1) = off;
        m(i + 1, i) = off;
      }
    }
    return HermitianMatrix(std::move(m));
  };
  return f;
}

RandomHolderFamily build_random_holder(std::uint64_t seed, double alpha, int n,
                                       int terms) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("build_random_holder: alpha must be in (0, 1]");
  if (n < 1) throw std::invalid_argument("build_random_holder: N must be >= 1");
  if (terms < 0)
    throw std::invalid_argument("build_random_holder: terms must be >= 0");

  SplitMix64 rng(seed);
  RandomHolderFamily out{.family = {},
                         .base = random_hermitian(rng, n),
                         .bumps = {},
                         .knots = {},
                         .matrix_constant = 0.0};
  for (int k = 0; k < terms; ++k) {
    out.knots.push_back(rng.uniform(-0.9, 0.9));
    out.bumps.push_back(random_hermitian(rng, n, 0.5));
    out.matrix_constant += op_norm(out.bumps.back());
  }

  ParamFamily f;
  f.kind = "random_holder";
  f.param_dim = 1;
  f.matrix_dim = n;
  f.claimed_alpha = alpha;
  f.domain = unit_box(1);
  f.known_matrix_constant = out.matrix_constant;
  const auto base = out.base;
  const auto bumps = out.bumps;
  const auto knots = out.knots;
  f.evaluator = [base, bumps, knots, alpha](std::span<const double> u) {
    HermitianMatrix a = base;
    for (std::size_t k = 0; k < bumps.size(); ++k)
      a = a + std::pow(std::abs(u[0] - knots[k]), alpha) * bumps[k];
    return a;
  };
  out.family = std::move(f);
  return out;
}

HermitianMatrix random_hermitian(SplitMix64& rng, int n, double scale) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.uniform(-scale, scale);
    for (int j = i + 1; j < n; ++j) {
      const Complex c = rng.complex_uniform(-scale, scale);
      m(i, j) = c;
      m(j, i) = std::conj(c);
    }
  }
  return HermitianMatrix(std::move(m));
}

CMatrix random_unitary(SplitMix64& rng, int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_uniform(-1.0, 1.0);
  // Modified Gram-Schmidt over columns, ascending.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      Complex proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(m(i, k)) * m(i, j);
      for (int i = 0; i < n; ++i) m(i, j) -= proj * m(i, k);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    if (norm < 1e-8) {
      // Degenerate draw; fall back to a unit coordinate vector.
      for (int i = 0; i < n; ++i) m(i, j) = (i == j) ? 1.0 : 0.0;
      norm = 1.0;
    }
    for (int i = 0; i < n; ++i) m(i, j) /= norm;
  }
  return m;
}

}  // namespace spectra
