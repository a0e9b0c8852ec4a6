#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cddiso/density.hpp"
#include "cddiso/errors.hpp"
#include "cddiso/quadrature.hpp"
#include "oracles.hpp"

using namespace cddiso;

namespace {

ModelParams mp(double H, double rho, double m) { return {H, rho, Dimension::finite(m)}; }

Density1D uniform01() { return Density1D([](double) { return 1.0; }, SupportInterval{0.0, 1.0}); }
Density1D exp01() { return Density1D([](double t) { return std::exp(t); }, SupportInterval{0.0, 1.0}); }

}  // namespace

TEST(Integrate, CosineOverSupport) {
  const ModelParams p = mp(0, 1, 1);
  const MassResult r = integrate([&](double t) { return eval_j(p, t); }, -std::numbers::pi / 2, std::numbers::pi / 2);
  EXPECT_NEAR(r.value, 2.0, 1e-13);
  EXPECT_LE(r.error_estimate, 1e-10 * r.value + 1e-14);
}

TEST(Integrate, GaussianOverLine) {
  const ModelParams p{0.0, 1.0, Dimension::infinite()};
  const MassResult r = integrate([&](double t) { return eval_j(p, t); }, ExtendedReal::neg_inf(), ExtendedReal::pos_inf());
  EXPECT_NEAR(r.value, std::sqrt(2 * std::numbers::pi), 1e-12);
}

TEST(Integrate, AgreesWithTrapezoid) {
  const ModelParams p = mp(0, 1, 2);
  const double e = std::numbers::pi / 2 * std::numbers::sqrt2;
  auto f = [&](double t) { return eval_j(p, t); };
  const double ref = oracle::trapezoid(f, -e, e, 1'000'000);
  EXPECT_NEAR(integrate(f, -e, e).value, ref, 1e-10);
  EXPECT_NEAR(ref, e, 1e-10);  // mean of cos^2 is 1/2
}

TEST(Integrate, EndpointZerosOfFractionalOrder) {
  // (1 - t^2)^0.3 has infinite slope at +-1.
  auto f = [](double t) { return std::pow(std::max(0.0, 1.0 - t * t), 0.3); };
  const double ref = std::sqrt(std::numbers::pi) * std::tgamma(1.3) / std::tgamma(1.8);
  EXPECT_NEAR(integrate(f, -1.0, 1.0).value, ref, 1e-9);
}

TEST(Integrate, HalfLines) {
  auto f = [](double t) { return std::exp(-t); };
  EXPECT_NEAR(integrate(f, 0.0, ExtendedReal::pos_inf()).value, 1.0, 1e-12);
  auto g = [](double t) { return std::exp(2 * t); };
  EXPECT_NEAR(integrate(g, ExtendedReal::neg_inf(), 1.0).value, 0.5 * std::exp(2.0), 1e-10);
}

TEST(Integrate, Additivity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  const ModelParams p = mp(0.4, -0.7, 2.6);
  auto f = [&](double t) { return eval_j(p, t); };
  for (int i = 0; i < 50; ++i) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const double whole = integrate(f, a, c).value;
    EXPECT_NEAR(integrate(f, a, b).value + integrate(f, b, c).value, whole, 2 * (1e-10 * whole + 1e-14));
  }
}

TEST(Integrate, Errors) {
  EXPECT_THROW(integrate([](double) { return 1.0; }, 1.0, 0.0), DomainError);
  EXPECT_EQ(integrate([](double) { return 1.0; }, 1.0, 1.0).value, 0.0);
  EXPECT_THROW(integrate([](double t) { return t > 0.5 ? NAN : 1.0; }, 0.0, 1.0), IntegrationError);
  QuadratureOptions tight;
  tight.max_evaluations = 2000;
  try {
    integrate([](double t) { return std::pow(t, -0.99); }, 0.0, 1.0, tight);
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_GT(e.best_estimate(), 1.0);
    EXPECT_GT(e.error_bound(), 0.0);
  }
  // Divergent tail: the budget runs out.
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, ExtendedReal::pos_inf()), IntegrationError);
}

TEST(Cdf, Examples) {
  EXPECT_NEAR(cdf(uniform01(), 0.25), 0.25, 1e-15);
  const Density1D cosine = Density1D::model(mp(0, 1, 1));
  EXPECT_NEAR(cdf(cosine, 0.0), 1.0, 1e-13);
  EXPECT_NEAR(cdf(exp01(), 0.5), std::exp(0.5) - 1.0, 1e-14);
  EXPECT_EQ(cdf(exp01(), -1.0), 0.0);
  EXPECT_EQ(cdf(exp01(), ExtendedReal::pos_inf()), exp01().total_mass().value());
}

TEST(Cdf, Monotone) {
  const Density1D d = Density1D::model(mp(1.3, 0.8, 3.0));
  double prev = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double t = -2.0 + 0.05 * i;
    const double c = cdf(d, t);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(CdfInverse, Examples) {
  EXPECT_NEAR(cdf_inverse(uniform01(), 0.75).value(), 0.75, 1e-14);
  EXPECT_NEAR(cdf_inverse(exp01(), (std::exp(1.0) - 1.0) / 2).value(), std::log((std::exp(1.0) + 1.0) / 2), 1e-13);
  const Density1D cosine = Density1D::model(mp(0, 1, 1));
  EXPECT_NEAR(cdf_inverse(cosine, 1.0).value(), 0.0, 1e-13);
  EXPECT_EQ(cdf_inverse(exp01(), 0.0), ExtendedReal(0.0));
  EXPECT_EQ(cdf_inverse(exp01(), exp01().total_mass().value()), ExtendedReal(1.0));
  EXPECT_THROW(cdf_inverse(exp01(), -0.1), DomainError);
  EXPECT_THROW(cdf_inverse(exp01(), 2.0), DomainError);
}

TEST(CdfInverse, RoundTrip) {
  const Density1D gauss = Density1D::model(ModelParams{0.3, 2.0, Dimension::infinite()});
  const Density1D power = Density1D::model(mp(2.0, 0.0, 4.0), SupportInterval{-1.0, 3.0});
  for (const Density1D* d : {&gauss, &power}) {
    const double z = d->total_mass().value();
    for (int i = 0; i <= 40; ++i) {
      const double p = z * i / 40.0;
      const ExtendedReal t = cdf_inverse(*d, p);
      EXPECT_LE(std::abs(cdf(*d, t) - p), std::max(1e-14, 8e-16 * z)) << i;
    }
  }
}

TEST(Density, InfiniteMassIsReported) {
  const Density1D d = Density1D::model(mp(0.0, -1.0, 2.0));
  EXPECT_TRUE(d.total_mass().is_pos_inf());
}

TEST(Density, TransformsPreserveMassRelations) {
  const Density1D d = Density1D::model(mp(0.5, 1.0, 2.0));
  const double z = d.total_mass().value();
  EXPECT_NEAR(d.reflected().total_mass().value(), z, 1e-13);
  EXPECT_NEAR(d.scaled(3.0).total_mass().value(), 3.0 * z, 1e-12);
  EXPECT_NEAR(d.dilated(2.0).total_mass().value(), 2.0 * z, 1e-12);
  EXPECT_NEAR(d.restricted(0.0, ExtendedReal::pos_inf()).total_mass().value(), cdf(d.reflected(), 0.0), 1e-13);
}
