#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

/// Base class for numerical failures raised by the library. Input/contract
/// violations (bad dimensions, out-of-domain parameters, malformed specs)
/// use std::invalid_argument instead.
struct SpectralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The shift z is within the exclusion distance of the spectrum; the
/// resolvent at z is not trustworthy. Re-choose the contour.
struct SpectrumTooClose : SpectralError {
  using SpectralError::SpectralError;
};

/// An eigenvalue lies on (or crossed) the integration circle.
struct ContourHitsSpectrum : SpectralError {
  using SpectralError::SpectralError;
};

/// Singular values of the computed projector cluster near 1/2: the quadrature
/// is too corrupted to assign a rank, which signals an inadmissible contour.
struct RankAmbiguous : SpectralError {
  using SpectralError::SpectralError;
};

/// Raised by the "strict" selection strategy when a crossing cannot be
/// resolved from samples alone. Carries the bracketing parameter values.
struct AmbiguousCrossing : SpectralError {
  AmbiguousCrossing(const std::string& what, double lo, double hi)
      : SpectralError(what), t_lo(lo), t_hi(hi) {}
  double t_lo;
  double t_hi;
};

}  // namespace spectra
