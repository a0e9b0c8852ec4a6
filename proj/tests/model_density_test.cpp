#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cddiso/errors.hpp"
#include "cddiso/model_density.hpp"
#include "oracles.hpp"

using namespace cddiso;

namespace {

ModelParams mp(double H, double rho, double m) { return {H, rho, Dimension::finite(m)}; }
ModelParams mp_inf(double H, double rho) { return {H, rho, Dimension::infinite()}; }

}  // namespace

TEST(EvalJ, OneAtOrigin) {
  for (double H : {-3.0, 0.0, 2.5})
    for (double rho : {-2.0, 0.0, 1.5}) {
      for (double m : {0.5, 1.0, 7.0}) EXPECT_DOUBLE_EQ(eval_j(mp(H, rho, m), 0.0), 1.0);
      EXPECT_DOUBLE_EQ(eval_j(mp_inf(H, rho), 0.0), 1.0);
    }
}

TEST(EvalJ, FlatBranchIsConstant) { EXPECT_DOUBLE_EQ(eval_j(mp(0, 0, 5), 3.7), 1.0); }

TEST(EvalJ, HyperbolicIdentity) { EXPECT_NEAR(eval_j(mp(1, -1, 1), 2.0), std::exp(2.0), 1e-12); }

TEST(EvalJ, CosineBranch) {
  EXPECT_NEAR(eval_j(mp(0, 1, 1), std::numbers::pi / 2), 0.0, 1e-15);
  EXPECT_NEAR(eval_j(mp(0, 1, 1), std::numbers::pi / 4), std::cos(std::numbers::pi / 4), 1e-15);
  EXPECT_EQ(eval_j(mp(0, 1, 1), 2.0), 0.0);
}

TEST(EvalJ, AgreesWithOdeIntegrator) {
  struct Case {
    double H, rho, m, t;
  };
  for (const Case c : {Case{0.7, 1.0, 2.0, 0.9}, Case{-1.2, 2.0, 3.5, -0.4}, Case{0.4, -1.5, 1.5, 1.3},
                       Case{2.0, -0.5, 4.0, -0.2}, Case{1.0, 0.0, 2.0, -1.5}, Case{-0.3, 0.8, 0.6, 0.7}}) {
    const double ref = oracle::rk4_model(c.H, c.rho, c.m, c.t);
    EXPECT_NEAR(eval_j(mp(c.H, c.rho, c.m), c.t), ref, 1e-9 * std::max(1.0, ref)) << c.H << " " << c.rho << " " << c.m;
  }
}

TEST(EvalJ, GaussianBranch) {
  EXPECT_NEAR(eval_j(mp_inf(1.0, 2.0), 0.5), std::exp(0.5 - 0.25), 1e-15);
  EXPECT_NEAR(eval_j(mp_inf(0.0, -1.0), 2.0), std::exp(2.0), 1e-12);
}

TEST(EvalJ, DegenerateDimension) {
  EXPECT_EQ(eval_j(mp(3, 1, 0), 0.0), 1.0);
  EXPECT_EQ(eval_j(mp(3, 1, 0), 0.1), 0.0);
  EXPECT_EQ(eval_j(mp(2, 0, 0), 0.1), 1.0);
  EXPECT_EQ(eval_j(mp(2, -1, 0), -0.1), 0.0);
  EXPECT_EQ(eval_j(mp(-2, -1, 0), -0.1), 1.0);
  EXPECT_EQ(eval_j(mp(0, 0, 0), -5.0), 1.0);
}

TEST(EvalJ, LogStaysFiniteWhereValueOverflows) {
  const ModelParams p = mp(0.0, -4.0, 4.0);
  EXPECT_TRUE(std::isinf(eval_j(p, 1000.0)));
  EXPECT_NEAR(log_eval_j(p, 1000.0), 4.0 * (1000.0 - std::numbers::ln2), 1e-9);
}

TEST(EvalJ, NonIntegerPowerAtRootIsZero) {
  const ModelParams p = mp(2.0, 0.0, 0.3);
  EXPECT_EQ(eval_j(p, -0.15), 0.0);
  EXPECT_GT(eval_j(p, -0.149), 0.0);
}

TEST(SupportJ, Examples) {
  SupportInterval s = support_j(mp(0, 1, 1));
  EXPECT_NEAR(s.lo.value(), -std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(s.hi.value(), std::numbers::pi / 2, 1e-15);

  s = support_j(mp(2, 0, 1));
  EXPECT_DOUBLE_EQ(s.lo.value(), -0.5);
  EXPECT_TRUE(s.hi.is_pos_inf());

  s = support_j(mp(3, -1, 1));
  const double root = oracle::bisect([](double t) { return std::cosh(t) + 3.0 * std::sinh(t); }, -2.0, 0.0);
  EXPECT_NEAR(s.lo.value(), root, 1e-14);
  EXPECT_NEAR(s.lo.value(), -std::atanh(1.0 / 3.0), 1e-15);
  EXPECT_TRUE(s.hi.is_pos_inf());
}

TEST(SupportJ, Regimes) {
  EXPECT_TRUE(support_j(mp_inf(5, 1)).lo.is_neg_inf());
  EXPECT_TRUE(support_j(mp_inf(5, 1)).hi.is_pos_inf());
  const SupportInterval flat = support_j(mp(0, 0, 2));
  EXPECT_TRUE(flat.lo.is_neg_inf() && flat.hi.is_pos_inf());
  const SupportInterval neg = support_j(mp(-4, 0, 2));
  EXPECT_TRUE(neg.lo.is_neg_inf());
  EXPECT_DOUBLE_EQ(neg.hi.value(), 0.5);
  // |beta| <= 1 on the hyperbolic branch keeps the whole line.
  const SupportInterval whole = support_j(mp(1.0, -1.0, 1.0));
  EXPECT_TRUE(whole.lo.is_neg_inf() && whole.hi.is_pos_inf());
  const SupportInterval left = support_j(mp(-3, -1, 1));
  EXPECT_TRUE(left.lo.is_neg_inf());
  EXPECT_NEAR(left.hi.value(), std::atanh(1.0 / 3.0), 1e-15);
}

TEST(SupportJ, PositiveCurvatureLengthIsPiOverSqrtDelta) {
  for (double H : {-5.0, -0.3, 0.0, 1.0, 40.0}) {
    const ModelParams p = mp(H, 2.0, 3.0);
    const SupportInterval s = support_j(p);
    EXPECT_NEAR(s.length(), std::numbers::pi / std::sqrt(2.0 / 3.0), 1e-12);
    EXPECT_LT(s.lo.value(), 0.0);
    EXPECT_GT(s.hi.value(), 0.0);
    EXPECT_NEAR(eval_j(p, s.lo.value() + 1e-9), 0.0, 1e-20);
  }
}

TEST(SupportJ, RejectsDegenerateDimension) {
  EXPECT_THROW(support_j(mp(1, 1, 0)), DegenerateDimensionError);
  EXPECT_EQ(degenerate_support(mp(1, 1, 0)).kind, DegenerateSupport::Kind::kOrigin);
  EXPECT_EQ(degenerate_support(mp(1, 0, 0)).kind, DegenerateSupport::Kind::kNonNegative);
  EXPECT_EQ(degenerate_support(mp(-1, -2, 0)).kind, DegenerateSupport::Kind::kNonPositive);
  EXPECT_EQ(degenerate_support(mp(0, -2, 0)).kind, DegenerateSupport::Kind::kWholeLine);
  EXPECT_THROW(degenerate_support(mp(0, 1, 1)), DomainError);
}

TEST(OdeResidual, Examples) {
  EXPECT_EQ(check_ode_residual(mp(0, 0, 3), 1.0, 1e-4), 0.0);
  EXPECT_LT(std::abs(check_ode_residual(mp(1, -1, 2), 0.5, 1e-4)), 1e-6);
  EXPECT_LT(std::abs(check_ode_residual(mp_inf(1, 2), -0.3, 1e-4)), 1e-6);
}

TEST(OdeResidual, SmallAcrossRegimes) {
  for (const ModelParams& p : {mp(0.5, 1.0, 2.0), mp(-2.0, 3.0, 5.0), mp(0.1, -2.0, 1.5), mp(3.0, 0.0, 2.5)}) {
    EXPECT_LT(std::abs(check_ode_residual(p, 0.2, 1e-4)), 1e-6);
  }
}

TEST(OdeResidual, RejectsPointsNearBoundary) {
  const ModelParams p = mp(0, 1, 1);
  EXPECT_THROW(check_ode_residual(p, std::numbers::pi / 2 - 1e-4, 1e-4), DomainError);
  EXPECT_THROW(check_ode_residual(mp(0, 1, 0), 0.0, 1e-4), DegenerateDimensionError);
}

TEST(RootJet, MatchesFiniteDifferences) {
  const ModelParams p = mp(0.8, -1.3, 2.2);
  const double t = 0.4, h = 1e-4;
  auto root = [&](double x) { return std::pow(eval_j(p, x), 1.0 / 2.2); };
  const RootJet r = root_jet(p, t);
  EXPECT_NEAR(r.value, root(t), 1e-13);
  EXPECT_NEAR(r.d1, (root(t + h) - root(t - h)) / (2 * h), 1e-7);
  EXPECT_NEAR(r.d2, (root(t + h) - 2 * root(t) + root(t - h)) / (h * h), 1e-5);
  EXPECT_THROW(root_jet(mp(0, 1, 1), 2.0), DomainError);
}

TEST(ModelInvariants, Reflection) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> H(-3, 3), rho(-2, 2), m(0.2, 8), t(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const double h = H(rng), r = rho(rng), mm = m(rng), x = t(rng);
    EXPECT_EQ(eval_j(mp(-h, r, mm), x), eval_j(mp(h, r, mm), -x));
    EXPECT_EQ(eval_j(mp_inf(-h, r), x), eval_j(mp_inf(h, r), -x));
  }
}

TEST(ModelInvariants, MonotoneInDimensionAndCurvature) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> H(-2, 2), rho(-2, 2), t(-2, 2);
  const double ms[] = {0.5, 1.0, 2.0, 5.0, 20.0, 100.0};
  for (int i = 0; i < 200; ++i) {
    const double h = H(rng), r = rho(rng), x = t(rng);
    double prev = 0.0;
    for (double m : ms) {
      const double j = eval_j(mp(h, r, m), x);
      EXPECT_GE(j, prev * (1 - 1e-12));
      prev = j;
    }
    EXPECT_GE(eval_j(mp_inf(h, r), x), prev * (1 - 1e-12));
    double last = std::numeric_limits<double>::infinity();
    for (double rr : {-2.0, -1.0, 0.0, 0.5, 1.5}) {
      const double j = eval_j(mp(h, rr, 3.0), x);
      EXPECT_LE(j, last * (1 + 1e-12));
      last = j;
    }
  }
}

TEST(ModelInvariants, LargeDimensionLimit) {
  for (double x : {-1.0, -0.3, 0.4, 1.2}) {
    const double g = eval_j(mp_inf(0.7, 1.1), x);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double m : {10.0, 1e2, 1e3, 1e4}) {
      const double gap = std::abs(eval_j(mp(0.7, 1.1, m), x) - g);
      EXPECT_LT(gap, prev_gap);
      prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 1e-3);
  }
}

TEST(ModelInvariants, ScaleCovariance) {
  for (double lambda : {0.5, 2.0, 10.0})
    for (double x : {-0.8, 0.3, 1.1}) {
      const ModelParams p = mp(0.9, -1.4, 2.5);
      const ModelParams ps = mp(0.9 / lambda, -1.4 / (lambda * lambda), 2.5);
      EXPECT_NEAR(eval_j(ps, lambda * x), eval_j(p, x), 1e-13 * eval_j(p, x));
      EXPECT_NEAR(eval_j(mp_inf(0.9 / lambda, 1.4 / (lambda * lambda)), lambda * x), eval_j(mp_inf(0.9, 1.4), x),
                  1e-13);
    }
}

TEST(Extended, ParsingAndOrdering) {
  EXPECT_TRUE(parse_extended_real("inf").is_pos_inf());
  EXPECT_TRUE(parse_extended_real("-inf").is_neg_inf());
  EXPECT_DOUBLE_EQ(parse_extended_real("2.5").value(), 2.5);
  EXPECT_THROW(parse_extended_real("abc"), ParameterError);
  EXPECT_THROW(parse_extended_real("1e999"), ParameterError);
  EXPECT_TRUE(parse_dimension("inf").is_infinite());
  EXPECT_THROW(parse_dimension("-1"), ParameterError);
  EXPECT_LT(ExtendedReal::neg_inf(), ExtendedReal(-1e300));
  EXPECT_LT(ExtendedReal(1e300), ExtendedReal::pos_inf());
  EXPECT_LT(Dimension::finite(1e300), Dimension::infinite());
  EXPECT_EQ(ExtendedReal::pos_inf().to_string(), "inf");
  EXPECT_THROW(ExtendedReal::pos_inf().value(), std::domain_error);
  EXPECT_EQ(Dimension::infinite().reciprocal(), 0.0);
}
