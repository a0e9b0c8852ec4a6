#pragma once

#include <cstddef>
#include <functional>

#include "cddiso/extended.hpp"

namespace cddiso {

class Density1D;

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// Integrand evaluations allowed per call.
  std::size_t max_evaluations = 1'000'000;
};

struct MassResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [lo, hi].
///
/// Infinite ends are mapped with t = lo + u/(1-u) (mirrored for -inf); the
/// whole line is split at 0. The integrand is never evaluated at a finite
/// endpoint. Throws IntegrationError when the evaluation budget runs out or
/// f returns a non-finite value, DomainError when lo > hi.
MassResult integrate(const std::function<double(double)>& f, ExtendedReal lo, ExtendedReal hi,
                     const QuadratureOptions& opts = {});

/// Mass of the density to the left of t.
double cdf(const Density1D& density, ExtendedReal t);

/// Smallest-bracket solution of cdf(t) = mass. Mass 0 and the total mass map
/// to the support endpoints. Throws DomainError for mass outside [0, total].
ExtendedReal cdf_inverse(const Density1D& density, double mass);

}  // namespace cddiso
