#include "cddiso/cdd_bound.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cddiso/density.hpp"
#include "cddiso/errors.hpp"
#include "cddiso/minimize.hpp"
#include "cddiso/profile1d.hpp"

namespace cddiso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_open_fraction(double v, const char* who) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(who) + ": v must lie in (0, 1)");
}

// J_H times exp(-c) for a log-scale c chosen by the caller, clipped to the
// support of J_H.
class ScaledModel {
 public:
  ScaledModel(const ModelParams& p, const QuadratureOptions& opts) : p_(p), support_(support_j(p)), opts_(opts) {}

  double log_j(double t) const { return log_eval_j(p_, t); }

  // Largest sampled log J on [a, b] (and at least log J(0) = 0 if 0 is inside).
  double sampled_max(double a, double b, int samples) const {
    double c = (a <= 0.0 && 0.0 <= b) ? 0.0 : -kInf;
    for (int j = 0; j <= samples; ++j) {
      const double t = j == samples ? b : a + (b - a) * j / samples;
      c = std::max(c, log_j(t));
    }
    return c;
  }

  double mass(ExtendedReal a, ExtendedReal b, double c) const {
    const ExtendedReal lo = std::max(a, support_.lo), hi = std::min(b, support_.hi);
    if (!(lo < hi)) return 0.0;
    const auto f = [this, c](double t) {
      const double l = log_j(t);
      return l == -kInf ? 0.0 : std::exp(l - c);
    };
    return integrate(f, lo, hi, opts_).value;
  }

  const SupportInterval& support() const { return support_; }

 private:
  ModelParams p_;
  SupportInterval support_;
  QuadratureOptions opts_;
};

struct Balanced {
  double a;
  double left, right;  // masses scaled by exp(-c)
  double c;
};

constexpr int kWindowSamples = 32;

Balanced balance(const ScaledModel& sm, double D, double v) {
  const double c_full = sm.sampled_max(-D, D, 2 * kWindowSamples);
  if (!(sm.mass(-D, 0.0, c_full) > 0.0)) {
    throw BalanceError("balance: no mass left of the origin", BalanceError::Side::kLeft);
  }
  if (!(sm.mass(0.0, D, c_full) > 0.0)) {
    throw BalanceError("balance: no mass right of the origin", BalanceError::Side::kRight);
  }
  auto residual = [&](double a) {
    const double c = sm.sampled_max(-a, D - a, kWindowSamples);
    const double l = sm.mass(-a, 0.0, c), r = sm.mass(0.0, D - a, c);
    if (!(l + r > 0.0)) throw NumericalError("balance: window mass underflows");
    return l / (l + r) - v;
  };
  std::uintmax_t iters = 200;
  const auto [x0, x1] =
      boost::math::tools::toms748_solve(residual, 0.0, D, -v, 1.0 - v, boost::math::tools::eps_tolerance<double>(50), iters);
  const double a = 0.5 * (x0 + x1);
  const double c = sm.sampled_max(-a, D - a, kWindowSamples);
  return Balanced{a, sm.mass(-a, 0.0, c), sm.mass(0.0, D - a, c), c};
}

double inverse_mass(const Balanced& b) { return std::exp(-b.c) / (b.left + b.right); }

double h_scale(const CDDParams& cdd, double D) {
  const Dimension m = cdd.m();
  if (m.is_infinite()) return std::max({std::sqrt(std::abs(cdd.rho)), 1.0 / D, 1.0});
  return std::max({std::sqrt(std::abs(cdd.rho) * m.value()), m.value() / D, 1.0});
}

// D = inf, rho > 0: the window is the whole support and H solves the
// full-line balance.
BoundResult full_line_bound(const CDDParams& cdd, double v, const QuadratureOptions& opts) {
  const Dimension m = cdd.m();
  struct Eval {
    double left, right, c;
  };
  auto eval = [&](double H) {
    const ModelParams p{H, cdd.rho, m};
    const ScaledModel sm(p, opts);
    double c;
    if (m.is_infinite()) {
      c = 0.5 * H * H / cdd.rho;
    } else {
      const double beta = H / (m.value() * std::sqrt(cdd.rho / m.value()));
      c = 0.5 * m.value() * std::log1p(beta * beta);
    }
    const SupportInterval& s = sm.support();
    return Eval{sm.mass(s.lo, 0.0, c), sm.mass(0.0, s.hi, c), c};
  };
  auto residual = [&](double H) {
    const Eval e = eval(H);
    return e.left / (e.left + e.right) - v;
  };
  double s = m.is_infinite() ? std::max(std::sqrt(cdd.rho), 1.0) : std::max(std::sqrt(cdd.rho * m.value()), 1.0);
  double glo = residual(-s), ghi = residual(s);
  int doublings = 0;
  while (!(glo > 0.0 && ghi < 0.0)) {
    if (++doublings > 60) throw BracketError("full-line balance: H bracket did not close");
    s *= 2.0;
    glo = residual(-s);
    ghi = residual(s);
  }
  std::uintmax_t iters = 200;
  const auto [h0, h1] =
      boost::math::tools::toms748_solve(residual, -s, s, glo, ghi, boost::math::tools::eps_tolerance<double>(50), iters);
  const double h = 0.5 * (h0 + h1);
  const Eval e = eval(h);
  BoundResult r;
  r.value = std::exp(-e.c) / (e.left + e.right);
  r.h_star = h;
  r.a_star = ExtendedReal::pos_inf();
  r.case_id = case_dispatch(cdd);
  return r;
}

double log_sinh(double x) { return x > 20.0 ? x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x)) : std::log(std::sinh(x)); }

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax - std::numbers::ln2 + std::log1p(std::exp(-2.0 * ax));
}

// profile_flat of exp(logf - c) on [lo, hi], c = max of logf at the sample points.
double log_profile(const std::function<double(double)>& logf, double lo, double hi, double v,
                   const QuadratureOptions& opts) {
  double c = -kInf;
  for (int j = 0; j <= 64; ++j) c = std::max(c, logf(lo + (hi - lo) * j / 64.0));
  Density1D d(
      [logf, c](double t) {
        const double l = logf(t);
        return l == -kInf ? 0.0 : std::exp(l - c);
      },
      SupportInterval{lo, hi}, opts);
  return profile_flat(d, v).value();
}

double family_min(const std::function<double(double)>& profile_at, double lo, double hi) {
  if (!(hi > lo)) return profile_at(lo);
  return scan_and_refine(profile_at, lo, hi, 33, 1e-10 * (hi - lo)).fx;
}

}  // namespace

Dimension CDDParams::m() const {
  if (q.is_infinite()) return Dimension::infinite();
  return Dimension::finite(std::max(0.0, n + q.value() - 1.0));
}

double CDDParams::delta() const { return rho / m().value(); }

void CDDParams::validate() const {
  if (n < 1) throw ParameterError("n must be at least 1");
  if (!std::isfinite(rho)) throw ParameterError("rho must be finite");
  if (!(D > ExtendedReal(0.0))) throw ParameterError("D must be positive");
  if (!q.is_infinite() && !(n + q.value() - 1.0 > 0.0)) {
    throw ParameterError("m = n + q - 1 must be positive (n = 1 needs q > 0)");
  }
}

std::string to_string(CaseId id) {
  if (id == CaseId::kTrivial) return "trivial";
  return std::to_string(static_cast<int>(id));
}

CaseId case_dispatch(const CDDParams& cdd) {
  cdd.validate();
  const bool finite_d = cdd.D.is_finite();
  if (cdd.q.is_finite()) {
    if (cdd.rho > 0.0) {
      if (!finite_d) return CaseId::kCase2;
      return cdd.D.value() < std::numbers::pi / std::sqrt(cdd.delta()) ? CaseId::kCase1 : CaseId::kCase2;
    }
    if (!finite_d) return CaseId::kTrivial;
    return cdd.rho == 0.0 ? CaseId::kCase3 : CaseId::kCase4;
  }
  if (cdd.rho != 0.0 && finite_d) return CaseId::kCase5;
  if (cdd.rho > 0.0) return CaseId::kCase6;
  if (cdd.rho == 0.0 && finite_d) return CaseId::kCase7;
  return CaseId::kTrivial;
}

double solve_balance(const ModelParams& params, double D, double v, const QuadratureOptions& opts) {
  if (params.m.is_zero()) throw DegenerateDimensionError("solve_balance: m must be positive");
  if (!(D > 0.0) || !std::isfinite(D)) throw DomainError("solve_balance: D must be finite and positive");
  require_open_fraction(v, "solve_balance");
  return balance(ScaledModel(params, opts), D, v).a;
}

BoundResult bound_at(const CDDParams& cdd, double v, const QuadratureOptions& opts) {
  cdd.validate();
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("bound_at: v must lie in [0, 1]");
  BoundResult out;
  out.case_id = case_dispatch(cdd);
  if (v == 0.0 || v == 1.0 || out.case_id == CaseId::kTrivial) return out;
  if (!cdd.D.is_finite()) return full_line_bound(cdd, v, opts);

  const double D = cdd.D.value();
  const Dimension m = cdd.m();
  auto objective = [&](double H) {
    try {
      return inverse_mass(balance(ScaledModel(ModelParams{H, cdd.rho, m}, opts), D, v));
    } catch (const NumericalError&) {
      return kInf;
    }
  };

  constexpr int kHalf = 64;
  double s = h_scale(cdd, D);
  std::vector<double> hs(2 * kHalf + 1), fs(2 * kHalf + 1);
  int imin = 0;
  for (int doublings = 0;; ++doublings) {
    if (doublings > 60) throw BracketError("bound_at: H bracket kept growing");
    imin = 0;
    for (int i = 0; i <= 2 * kHalf; ++i) {
      hs[i] = s * (i - kHalf) / kHalf;
      fs[i] = objective(hs[i]);
      if (fs[i] < fs[imin]) imin = i;
    }
    const double fmin = fs[imin];
    if (fmin < kInf && imin > 0 && imin < 2 * kHalf && fs.front() >= 10.0 * fmin && fs.back() >= 10.0 * fmin) break;
    s *= 2.0;
  }
  ScalarMin best = golden_section(objective, hs[imin - 1], hs[imin + 1], 1e-8 * s);
  if (fs[imin] < best.fx) best = {hs[imin], fs[imin]};

  const Balanced b = balance(ScaledModel(ModelParams{best.x, cdd.rho, m}, opts), D, v);
  out.value = inverse_mass(b);
  out.h_star = best.x;
  out.a_star = b.a;
  return out;
}

double bound_oracle_grid(const CDDParams& cdd, double v, int h_grid, int a_grid, const QuadratureOptions& opts) {
  cdd.validate();
  require_open_fraction(v, "bound_oracle_grid");
  if (!cdd.D.is_finite()) throw DomainError("bound_oracle_grid: D must be finite");
  if (h_grid < 64 || a_grid < 64) throw DomainError("bound_oracle_grid: grids need at least 64 points");
  const double D = cdd.D.value();
  const Dimension m = cdd.m();

  auto inner = [&](double H) {
    try {
      const ScaledModel sm(ModelParams{H, cdd.rho, m}, opts);
      const double c = sm.sampled_max(-D, D, 4 * kWindowSamples);
      auto phi = [&](double a) {
        const double l = sm.mass(-a, 0.0, c), r = sm.mass(0.0, D - a, c);
        return std::max(l > 0.0 ? v / l : kInf, r > 0.0 ? (1.0 - v) / r : kInf);
      };
      const ScalarMin best = scan_and_refine(phi, 0.0, D, a_grid, 1e-13 * D);
      return best.fx == kInf ? kInf : std::exp(-c) * best.fx;
    } catch (const NumericalError&) {
      return kInf;
    }
  };

  double k = h_scale(cdd, D);
  for (int doublings = 0; doublings <= 60; ++doublings, k *= 2.0) {
    std::vector<double> fs(h_grid);
    int imin = 0;
    for (int i = 0; i < h_grid; ++i) {
      fs[i] = inner(-k + 2.0 * k * i / (h_grid - 1));
      if (fs[i] < fs[imin]) imin = i;
    }
    if (!(fs[imin] < kInf) || imin == 0 || imin == h_grid - 1) continue;
    if (fs.front() < 10.0 * fs[imin] || fs.back() < 10.0 * fs[imin]) continue;
    const double step = 2.0 * k / (h_grid - 1);
    const double centre = -k + step * imin;
    const ScalarMin best = golden_section(inner, centre - step, centre + step, 1e-9 * k);
    return std::min(best.fx, fs[imin]);
  }
  throw BracketError("bound_oracle_grid: H bracket kept growing");
}

double case3_closed_form(int n, double q, double D, double v) {
  const double N = n + q;
  if (!(N > 1.0) || !std::isfinite(q)) throw DomainError("case3_closed_form: need finite q with n + q > 1");
  if (!(D > 0.0) || !std::isfinite(D)) throw DomainError("case3_closed_form: D must be finite and positive");
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("case3_closed_form: v must lie in [0, 1]");
  const double lo = std::min(v, 1.0 - v), hi = std::max(v, 1.0 - v);
  // xi = r / (1 - r) maps [0, inf) onto [0, 1); r = 1 is the uniform limit 1/N.
  auto g = [&](double r) {
    if (r >= 1.0) return 1.0 / N;
    const double rn = std::pow(r, N);
    return (1.0 - r) * std::pow(lo + hi * rn, (N - 1.0) / N) / (-std::expm1(N * std::log1p(r - 1.0)));
  };
  const ScalarMin best = scan_and_refine(g, 0.0, 1.0, 1025, 1e-14);
  return N / D * best.fx;
}

double case7_closed_form(double D, double v) {
  if (!(D > 0.0) || !std::isfinite(D)) throw DomainError("case7_closed_form: D must be finite and positive");
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("case7_closed_form: v must lie in [0, 1]");
  const double lo = std::min(v, 1.0 - v);
  // w = exp(s); the w -> inf limit of the objective is 1.
  auto g = [lo](double s) {
    const double w = std::exp(s);
    return (lo + w) * std::log1p(1.0 / w);
  };
  const ScalarMin best = scan_and_refine(g, -40.0, 40.0, 1601, 1e-12);
  return std::min(best.fx, 1.0) / D;
}

double bonnet_myers_diameter(double rho, int n, double q) {
  const double m = n + q - 1.0;
  if (!(rho > 0.0) || !(m > 0.0) || !std::isfinite(q)) {
    throw DomainError("bonnet_myers_diameter: need rho > 0 and 0 < n + q - 1 < inf");
  }
  return std::numbers::pi / std::sqrt(rho / m);
}

double case_family_bound(const CDDParams& cdd, double v, const QuadratureOptions& opts) {
  cdd.validate();
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("case_family_bound: v must lie in [0, 1]");
  const CaseId id = case_dispatch(cdd);
  if (v == 0.0 || v == 1.0 || id == CaseId::kTrivial) return 0.0;
  const double D = cdd.D.is_finite() ? cdd.D.value() : kInf;
  switch (id) {
    case CaseId::kCase1:
    case CaseId::kCase2: {
      const double m = cdd.m().value(), k = std::sqrt(cdd.delta());
      const double len = std::numbers::pi / k;
      const auto logf = [m, k](double t) {
        const double sn = std::sin(k * t);
        return sn > 0.0 ? m * std::log(sn) : -kInf;
      };
      if (D >= len) return log_profile(logf, 0.0, len, v, opts);
      return family_min([&](double xi) { return log_profile(logf, xi, xi + D, v, opts); }, 0.0, len - D);
    }
    case CaseId::kCase3:
      return case3_closed_form(cdd.n, cdd.q.value(), D, v);
    case CaseId::kCase4: {
      const double m = cdd.m().value(), k = std::sqrt(-cdd.delta());
      const auto log_sh = [m, k](double t) { return t > 0.0 ? m * log_sinh(k * t) : -kInf; };
      const auto log_ch = [m, k](double t) { return m * log_cosh(k * t); };
      const auto log_ex = [m, k](double t) { return m * k * t; };
      const double reach = std::max(20.0 / k, D);
      const double sh = family_min([&](double xi) { return log_profile(log_sh, xi, xi + D, v, opts); }, 0.0, reach);
      const double ex = log_profile(log_ex, 0.0, D, v, opts);
      const double ch =
          family_min([&](double xi) { return log_profile(log_ch, xi, xi + D, v, opts); }, -0.5 * D, reach);
      return std::min({sh, ex, ch});
    }
    case CaseId::kCase5: {
      const double rho = cdd.rho;
      const auto logf = [rho](double t) { return -0.5 * rho * t * t; };
      const double reach = std::max(D, 8.0 / std::sqrt(std::abs(rho)));
      return family_min([&](double xi) { return log_profile(logf, xi, xi + D, v, opts); }, -0.5 * D, reach);
    }
    case CaseId::kCase6:
      return gaussian_profile(cdd.rho, v);
    case CaseId::kCase7:
      return case7_closed_form(D, v);
    case CaseId::kTrivial:
      break;
  }
  return 0.0;
}

}  // namespace cddiso
