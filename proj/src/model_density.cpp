#include "cddiso/model_density.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cddiso/errors.hpp"

namespace cddiso {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class Branch { kLinear, kTrig, kHyperbolic };

struct BranchInfo {
  Branch branch;
  double k = 0.0;      // sqrt(|delta|)
  double beta = 0.0;   // H / (m k)
  double slope = 0.0;  // H / m, linear branch
};

BranchInfo classify(const ModelParams& p) {
  const double m = p.m.value();
  const double delta = p.rho / m;
  const double slope = p.H / m;
  BranchInfo b;
  b.slope = slope;
  if (std::abs(delta) < 1e-12 * std::max(1.0, slope * slope)) {
    b.branch = Branch::kLinear;
    return b;
  }
  b.k = std::sqrt(std::abs(delta));
  b.beta = slope / b.k;
  b.branch = delta > 0.0 ? Branch::kTrig : Branch::kHyperbolic;
  return b;
}

void require_positive_dimension(const ModelParams& p, const char* who) {
  if (p.m.is_zero()) throw DegenerateDimensionError(std::string(who) + ": m = 0 has an indicator density");
}

// log of c(t) + beta s(t) on the branch, -inf where the base is not positive.
double log_base(const BranchInfo& b, double t) {
  switch (b.branch) {
    case Branch::kLinear: {
      const double x = b.slope * t;
      return x <= -1.0 ? kNegInf : std::log1p(x);
    }
    case Branch::kTrig: {
      const double x = b.k * t;
      const double s = std::sin(0.5 * x);
      const double d = -2.0 * s * s + b.beta * std::sin(x);
      return d <= -1.0 ? kNegInf : std::log1p(d);
    }
    case Branch::kHyperbolic: {
      const double x = b.k * t;
      const double ax = std::abs(x);
      if (ax > 20.0) {
        const double sg = x > 0.0 ? 1.0 : -1.0;
        const double y = (1.0 + b.beta * sg) + std::exp(-2.0 * ax) * (1.0 - b.beta * sg);
        return y <= 0.0 ? kNegInf : ax - std::numbers::ln2 + std::log(y);
      }
      const double s = std::sinh(0.5 * x);
      const double d = 2.0 * s * s + b.beta * std::sinh(x);
      return d <= -1.0 ? kNegInf : std::log1p(d);
    }
  }
  return kNegInf;
}

SupportInterval finite_support(const ModelParams& p, const BranchInfo& b) {
  SupportInterval s;
  const double m = p.m.value();
  switch (b.branch) {
    case Branch::kLinear:
      if (p.H > 0.0) s.lo = -m / p.H;
      if (p.H < 0.0) s.hi = -m / p.H;
      break;
    case Branch::kTrig: {
      const double alpha = std::atan2(1.0, b.beta);
      s.lo = -alpha / b.k;
      s.hi = (std::numbers::pi - alpha) / b.k;
      break;
    }
    case Branch::kHyperbolic:
      if (std::abs(b.beta) > 1.0) {
        const double t0 = -std::atanh(1.0 / b.beta) / b.k;
        if (b.beta > 0.0) {
          s.lo = t0;
        } else {
          s.hi = t0;
        }
      }
      break;
  }
  return s;
}

}  // namespace

double ModelParams::delta() const {
  if (m.is_infinite() || m.is_zero()) throw DomainError("delta = rho/m needs 0 < m < inf");
  return rho / m.value();
}

SupportInterval support_j(const ModelParams& p) {
  require_positive_dimension(p, "support_j");
  if (p.m.is_infinite()) return SupportInterval{};
  return finite_support(p, classify(p));
}

DegenerateSupport degenerate_support(const ModelParams& p) {
  if (!p.m.is_zero()) throw DomainError("degenerate_support: only defined for m = 0");
  if (p.rho > 0.0) return {DegenerateSupport::Kind::kOrigin};
  if (p.H > 0.0) return {DegenerateSupport::Kind::kNonNegative};
  if (p.H < 0.0) return {DegenerateSupport::Kind::kNonPositive};
  return {DegenerateSupport::Kind::kWholeLine};
}

double log_eval_j(const ModelParams& p, double t) {
  require_positive_dimension(p, "log_eval_j");
  if (p.m.is_infinite()) return p.H * t - 0.5 * p.rho * t * t;
  const BranchInfo b = classify(p);
  if (!finite_support(p, b).contains(t)) return kNegInf;
  const double lb = log_base(b, t);
  if (lb == kNegInf) return kNegInf;
  return p.m.value() * lb;
}

double eval_j(const ModelParams& p, double t) {
  if (p.m.is_zero()) {
    if (p.rho > 0.0) return t == 0.0 ? 1.0 : 0.0;
    return p.H * t >= 0.0 ? 1.0 : 0.0;
  }
  const double l = log_eval_j(p, t);
  return l == kNegInf ? 0.0 : std::exp(l);
}

RootJet root_jet(const ModelParams& p, double t) {
  require_positive_dimension(p, "root_jet");
  if (p.m.is_infinite()) throw DomainError("root_jet: J^(1/m) needs finite m");
  const BranchInfo b = classify(p);
  const SupportInterval s = finite_support(p, b);
  if (!(s.lo < ExtendedReal(t) && ExtendedReal(t) < s.hi)) throw DomainError("root_jet: t outside the open support");
  const double delta = p.rho / p.m.value();
  RootJet r{};
  switch (b.branch) {
    case Branch::kLinear:
      r.value = 1.0 + b.slope * t;
      r.d1 = b.slope;
      break;
    case Branch::kTrig: {
      const double c = std::cos(b.k * t), sn = std::sin(b.k * t);
      r.value = c + b.beta * sn;
      r.d1 = b.k * (-sn + b.beta * c);
      break;
    }
    case Branch::kHyperbolic: {
      const double c = std::cosh(b.k * t), sn = std::sinh(b.k * t);
      r.value = c + b.beta * sn;
      r.d1 = b.k * (sn + b.beta * c);
      break;
    }
  }
  r.d2 = -delta * r.value;
  return r;
}

double check_ode_residual(const ModelParams& p, double t, double h) {
  require_positive_dimension(p, "check_ode_residual");
  if (!(h > 0.0)) throw DomainError("check_ode_residual: step must be positive");
  const SupportInterval s = support_j(p);
  if (!(s.lo < ExtendedReal(t - 2.0 * h) && ExtendedReal(t + 2.0 * h) < s.hi)) {
    throw DomainError("check_ode_residual: t within 2h of a support endpoint");
  }
  const double lm = log_eval_j(p, t - h);
  const double l0 = log_eval_j(p, t);
  const double lp = log_eval_j(p, t + h);
  const double d2 = (lp - 2.0 * l0 + lm) / (h * h);
  const double d1 = (lp - lm) / (2.0 * h);
  return -d2 - p.m.reciprocal() * d1 * d1 - p.rho;
}

}  // namespace cddiso
