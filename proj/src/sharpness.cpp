#include "cddiso/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cddiso/density.hpp"
#include "cddiso/errors.hpp"
#include "cddiso/profile1d.hpp"

namespace cddiso {

WarpedProduct::WarpedProduct(int n, double q, double eps, double a, double b, JetFn f, JetFn p)
    : n_(n), q_(q), eps_(eps), a_(a), b_(b), f_(std::move(f)), p_(std::move(p)) {
  if (n < 3) throw DomainError("WarpedProduct: n must be at least 3");
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("WarpedProduct: q must lie in (0, inf)");
  if (!(eps > 0.0)) throw DomainError("WarpedProduct: eps must be positive");
  if (!(-a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("WarpedProduct: need -a < b");
  constexpr int kChecks = 256;
  for (int i = 0; i <= kChecks; ++i) {
    const double t = i == kChecks ? b : -a + (a + b) * i / kChecks;
    if (!(f_(t).value > 0.0) || !(p_(t).value > 0.0)) {
      throw DomainError("WarpedProduct: f and p must be positive on [-a, b], fails at t = " + std::to_string(t));
    }
  }
}

WarpedProduct WarpedProduct::canonical(int n, double q, double eps, double a, double b, const ModelParams& base) {
  if (base.m.is_infinite() || base.m.value() != n + q - 1.0) {
    throw DomainError("WarpedProduct::canonical: base dimension must equal n + q - 1");
  }
  const SupportInterval s = support_j(base);
  if (!(s.lo < ExtendedReal(-a) && ExtendedReal(b) < s.hi)) {
    throw DomainError("WarpedProduct::canonical: J must be positive at -a and b");
  }
  auto jet = [base](double t) {
    const RootJet r = root_jet(base, t);
    return Jet{r.value, r.d1, r.d2};
  };
  return WarpedProduct(n, q, eps, a, b, jet, jet);
}

void WarpedProduct::require_inside(double t) const {
  if (!(t >= -a_ && t <= b_)) throw DomainError("WarpedProduct: t outside [-a, b]");
}

Jet WarpedProduct::f(double t) const {
  require_inside(t);
  return f_(t);
}

Jet WarpedProduct::p(double t) const {
  require_inside(t);
  return p_(t);
}

double ricci_radial(const WarpedProduct& wp, double t) {
  const Jet f = wp.f(t), p = wp.p(t);
  return -(wp.n() - 1) * f.d2 / f.value - wp.q() * p.d2 / p.value;
}

double ricci_spherical(const WarpedProduct& wp, double t) {
  const Jet f = wp.f(t), p = wp.p(t);
  const double e2 = wp.eps() * wp.eps();
  return -f.d2 / f.value + (wp.n() - 2) * (1.0 - e2 * f.d1 * f.d1) / (e2 * f.value * f.value) -
         wp.q() * (f.d1 / f.value) * (p.d1 / p.value);
}

double check_cdd(const WarpedProduct& wp, double rho, int grid_points) {
  if (grid_points < 2) throw DomainError("check_cdd: need at least 2 grid points");
  double worst = std::numeric_limits<double>::infinity();
  const double lo = -wp.a(), hi = wp.b();
  for (int i = 0; i < grid_points; ++i) {
    const double t = i + 1 == grid_points ? hi : lo + (hi - lo) * i / (grid_points - 1);
    worst = std::min({worst, ricci_radial(wp, t) - rho, ricci_spherical(wp, t) - rho});
  }
  return worst;
}

double slab_profile(const WarpedProduct& wp, double v, const QuadratureOptions& opts) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("slab_profile: v must lie in (0, 1)");
  const double lo = -wp.a(), hi = wp.b();
  auto log_w = [&wp](double t) { return (wp.n() - 1) * std::log(wp.f(t).value) + wp.q() * std::log(wp.p(t).value); };
  double c = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 64; ++j) c = std::max(c, log_w(std::min(hi, lo + (hi - lo) * j / 64.0)));
  Density1D d([log_w, c](double t) { return std::exp(log_w(t) - c); }, SupportInterval{lo, hi}, opts);
  return profile_flat(d, v).value();
}

}  // namespace cddiso
