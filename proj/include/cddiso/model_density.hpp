#pragma once

#include "cddiso/extended.hpp"

namespace cddiso {

/// Parameters (H, rho, m) of the model Jacobian J_{H,rho,m}.
///
/// H is the initial log-derivative J'(0), rho the curvature lower bound and
/// m the generalized dimension minus one.
struct ModelParams {
  double H = 0.0;
  double rho = 0.0;
  Dimension m = Dimension::finite(1.0);

  /// rho / m for finite positive m.
  double delta() const;
};

/// Closed interval [lo, hi] with possibly infinite endpoints.
struct SupportInterval {
  ExtendedReal lo = ExtendedReal::neg_inf();
  ExtendedReal hi = ExtendedReal::pos_inf();

  bool contains(double t) const { return lo <= ExtendedReal(t) && ExtendedReal(t) <= hi; }
  bool is_bounded() const { return lo.is_finite() && hi.is_finite(); }
  /// hi - lo; throws for an unbounded interval.
  double length() const { return hi.value() - lo.value(); }
};

/// Evaluates J_{H,rho,m}(t).
///
/// m = 0: indicator of {t = 0} (rho > 0) or of {H t >= 0} (rho <= 0).
/// 0 < m < inf: (c_delta(t) + (H/m) s_delta(t))_+^m truncated to its first
/// roots on either side of the origin. m = inf: exp(H t - rho t^2 / 2).
double eval_j(const ModelParams& p, double t);

/// log J_{H,rho,m}(t) for m > 0; -infinity (as a double) outside the support.
/// Stays finite where eval_j would overflow.
double log_eval_j(const ModelParams& p, double t);

/// Support of J for m in (0, inf]. Throws DegenerateDimensionError for m = 0.
SupportInterval support_j(const ModelParams& p);

/// Literal support sets of the m = 0 indicator regimes.
struct DegenerateSupport {
  enum class Kind { kOrigin, kNonNegative, kNonPositive, kWholeLine };
  Kind kind;
};
DegenerateSupport degenerate_support(const ModelParams& p);

/// Value and first two derivatives of J^{1/m} (finite m > 0) at a point
/// strictly inside the support, computed from the closed-form branch.
struct RootJet {
  double value;
  double d1;
  double d2;
};
RootJet root_jet(const ModelParams& p, double t);

/// Central-difference estimate of -(log J)'' - (1/m)((log J)')^2 - rho at t.
/// Requires m > 0 and t at least 2h inside the support.
double check_ode_residual(const ModelParams& p, double t, double h);

}  // namespace cddiso
