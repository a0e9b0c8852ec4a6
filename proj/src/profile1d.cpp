#include "cddiso/profile1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "cddiso/errors.hpp"

namespace cddiso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_fraction(double v, const char* who) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(who) + ": v must lie in [0, 1]");
}

double value_at(const Density1D& d, ExtendedReal t) { return t.is_finite() ? d(t.value()) : 0.0; }

struct Derivs {
  double d1, d2;
};

// (log f)' and (log f)'' at t, with the step shrunk to stay inside the support.
Derivs log_derivs(const Density1D& d, double t) {
  const SupportInterval& s = d.support();
  if (!(s.lo < ExtendedReal(t) && ExtendedReal(t) < s.hi)) {
    throw DomainError("grid point " + std::to_string(t) + " is not interior to the support");
  }
  double h = 1e-4 * (s.is_bounded() ? std::max(1.0, s.length()) : 1.0);
  if (s.lo.is_finite()) h = std::min(h, 0.5 * (t - s.lo.value()));
  if (s.hi.is_finite()) h = std::min(h, 0.5 * (s.hi.value() - t));
  if (d.log_derivative()) {
    const auto& g = *d.log_derivative();
    return {g(t), (g(t + h) - g(t - h)) / (2.0 * h)};
  }
  const double fm = d(t - h), f0 = d(t), fp = d(t + h);
  if (!(fm > 0.0 && f0 > 0.0 && fp > 0.0)) throw DomainError("density must be positive near grid point");
  const double lm = std::log(fm), l0 = std::log(f0), lp = std::log(fp);
  return {(lp - lm) / (2.0 * h), (lp - 2.0 * l0 + lm) / (h * h)};
}

}  // namespace

ExtendedReal profile_flat(const Density1D& density, double v) {
  require_fraction(v, "profile_flat");
  const ExtendedReal zext = density.total_mass();
  if (zext.is_pos_inf()) return 0.0;
  const double z = zext.value();
  if (z == 0.0) return ExtendedReal::pos_inf();
  const double f1 = value_at(density, cdf_inverse(density, std::min(v * z, z)));
  const double f2 = value_at(density, cdf_inverse(density, std::min((1.0 - v) * z, z)));
  return std::min(f1, f2) / z;
}

BruteForceResult profile_bruteforce(const Density1D& density, double v, int max_intervals, int grid_points) {
  require_fraction(v, "profile_bruteforce");
  if (max_intervals < 1 || max_intervals > 3) throw DomainError("profile_bruteforce: max_intervals must be 1, 2 or 3");
  if (grid_points < 100) throw DomainError("profile_bruteforce: need at least 100 grid points");
  const SupportInterval& s = density.support();
  if (!s.is_bounded()) throw DomainError("profile_bruteforce: support must be bounded");

  const int n = grid_points;
  const double lo = s.lo.value(), hi = s.hi.value();
  std::vector<double> x(n), F(n, 0.0);
  for (int i = 0; i < n; ++i) x[i] = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
  const auto f = [&density](double t) { return density(t); };
  double tol = 0.0;
  for (int i = 1; i < n; ++i) {
    const double cell = integrate(f, x[i - 1], x[i], density.options()).value;
    F[i] = F[i - 1] + cell;
    tol = std::max(tol, cell);
  }
  const double z = F[n - 1];
  if (!(z > 0.0)) throw DomainError("profile_bruteforce: density has zero mass");
  std::vector<double> w(n, 0.0);
  for (int i = 1; i + 1 < n; ++i) w[i] = density(x[i]) / z;

  // Phase p counts toggles so far: even = outside, odd = inside. The signed
  // sum S = sum(closing F) - sum(opening F) is the mass once closed.
  const int phases = 2 * max_intervals + 1;
  const double bw = tol / (4.0 * max_intervals);
  const int bins = static_cast<int>(std::ceil(2.0 * z / bw)) + 3;
  auto bin_of = [&](double sum) {
    return std::clamp(static_cast<int>(std::floor((sum + z) / bw)) + 1, 0, bins - 1);
  };
  std::vector<double> cost(static_cast<std::size_t>(phases) * bins, kInf), exact(cost.size(), 0.0);
  auto at = [bins](int p, int b) { return static_cast<std::size_t>(p) * bins + b; };
  cost[at(0, bin_of(0.0))] = 0.0;

  for (int i = 0; i < n; ++i) {
    for (int p = phases - 2; p >= 0; --p) {
      const double sign = p % 2 == 0 ? -1.0 : 1.0;
      for (int b = 0; b < bins; ++b) {
        const double c = cost[at(p, b)];
        if (c == kInf) continue;
        const double sum = exact[at(p, b)] + sign * F[i];
        const std::size_t dst = at(p + 1, bin_of(sum));
        const double nc = c + w[i];
        if (nc < cost[dst]) {
          cost[dst] = nc;
          exact[dst] = sum;
        }
      }
    }
  }

  const double target = v * z;
  BruteForceResult best{kInf, 0.0};
  double reach_lo = kInf, reach_hi = -kInf;
  for (int p = 0; p < phases; ++p) {
    for (int b = 0; b < bins; ++b) {
      const double c = cost[at(p, b)];
      if (c == kInf) continue;
      const double mass = exact[at(p, b)] + (p % 2 == 1 ? z : 0.0);
      reach_lo = std::min(reach_lo, mass);
      reach_hi = std::max(reach_hi, mass);
      if (std::abs(mass - target) <= tol && c < best.value) best = {c, mass / z};
    }
  }
  if (best.value == kInf) {
    throw InfeasibleMassError("profile_bruteforce: no grid set reaches the target mass", reach_lo / z, reach_hi / z);
  }
  return best;
}

double check_cdd_1d(const Density1D& density, double rho, Dimension q, std::span<const double> grid) {
  if (q.is_zero()) throw DomainError("check_cdd_1d: q must be positive");
  const double iq = q.reciprocal();
  double worst = kInf;
  for (double t : grid) {
    const Derivs d = log_derivs(density, t);
    worst = std::min(worst, -d.d2 - iq * d.d1 * d.d1 - rho);
  }
  return worst;
}

bool domination_check(const Density1D& density, double rho, Dimension q, double x, double t) {
  if (q.is_zero()) throw DomainError("domination_check: q must be positive");
  const SupportInterval& s = density.support();
  const double a = std::min(x, x + t), b = std::max(x, x + t);
  if (!(s.lo < ExtendedReal(a) && ExtendedReal(b) < s.hi)) {
    throw DomainError("domination_check: [x, x+t] must be interior to the support");
  }
  const double slope = log_derivs(density, x).d1;
  const double bound = density(x) * eval_j(ModelParams{slope, rho, q}, t);
  return density(x + t) <= bound * (1.0 + 1e-8);
}

double gaussian_profile(double rho, double v) {
  if (!(rho > 0.0)) throw DomainError("gaussian_profile: rho must be positive");
  require_fraction(v, "gaussian_profile");
  if (v == 0.0 || v == 1.0) return 0.0;
  const double x = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * v);
  return std::sqrt(rho) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double sphere_profile(int n, double q, double rho, double v) {
  if (n < 1 || !(q >= 0.0) || !std::isfinite(q)) throw DomainError("sphere_profile: need n >= 1 and finite q >= 0");
  if (!(rho > 0.0)) throw DomainError("sphere_profile: rho must be positive");
  const double m = n + q - 1.0;
  if (!(m > 0.0)) throw DomainError("sphere_profile: n + q - 1 must be positive");
  const double k = std::sqrt(rho / m);
  Density1D d(
      [m, k](double t) {
        const double sn = std::sin(k * t);
        return sn > 0.0 ? std::exp(m * std::log(sn)) : 0.0;
      },
              SupportInterval{0.0, std::numbers::pi / k});
  return profile_flat(d, v).value();
}

}  // namespace cddiso
