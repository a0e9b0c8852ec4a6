#pragma once

#include <span>

#include "cddiso/density.hpp"
#include "cddiso/extended.hpp"

namespace cddiso {

/// Half-line profile (1/Z) min(f(F^-1(vZ)), f(F^-1((1-v)Z))).
///
/// Zero total mass gives +inf and infinite total mass gives 0. At v in
/// {0, 1} the value is min(f(lo), f(hi))/Z, with f taken as 0 at an
/// infinite endpoint.
ExtendedReal profile_flat(const Density1D& density, double v);

struct BruteForceResult {
  double value;
  /// Mass fraction of the optimal grid set.
  double achieved_fraction;
};

/// Least boundary weight (sum of f/Z at interior interval endpoints) over
/// unions of at most max_intervals grid-aligned intervals whose mass is
/// within one grid-cell mass of vZ. The support must be bounded.
BruteForceResult profile_bruteforce(const Density1D& density, double v, int max_intervals, int grid_points);

/// min over grid of -(log f)'' - (1/q)((log f)')^2 - rho, the 1/q term
/// dropped for q = inf. Uses the density's analytic log-derivative when
/// present, central differences otherwise.
double check_cdd_1d(const Density1D& density, double rho, Dimension q, std::span<const double> grid);

/// f(x+t) <= f(x) J_{(log f)'(x), rho, q}(t) up to relative slack 1e-8.
bool domination_check(const Density1D& density, double rho, Dimension q, double x, double t);

/// sqrt(rho) phi(Phi^-1(v)).
double gaussian_profile(double rho, double v);

/// profile_flat of sin(sqrt(delta) t)^(n+q-1) on [0, pi/sqrt(delta)],
/// delta = rho/(n+q-1).
double sphere_profile(int n, double q, double rho, double v);

}  // namespace cddiso
