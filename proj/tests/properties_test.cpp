#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cddiso/cdd_bound.hpp"

using namespace cddiso;

namespace {

CDDParams make(double rho, int n, Dimension q, ExtendedReal D) {
  CDDParams c;
  c.rho = rho;
  c.n = n;
  c.q = q;
  c.D = D;
  return c;
}

double bound(const CDDParams& c, double v) { return bound_at(c, v).value; }

}  // namespace

TEST(Properties, RandomMonotonicityChains) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> urho(-3.0, 3.0), uq(0.0, 4.0), uD(0.3, 3.0), uv(0.05, 0.5);
  for (int trial = 0; trial < 8; ++trial) {
    const double rho = urho(rng), q = uq(rng), D = uD(rng), v = uv(rng);
    const int n = 2 + trial % 3;
    const CDDParams base = make(rho, n, Dimension::finite(q), ExtendedReal(D));
    const double b = bound(base, v);
    SCOPED_TRACE(testing::Message() << "rho=" << rho << " n=" << n << " q=" << q << " D=" << D << " v=" << v);
    EXPECT_GE(b, bound(make(rho - 0.5, n, Dimension::finite(q), ExtendedReal(D)), v) - 1e-10);
    EXPECT_GE(b, bound(make(rho, n, Dimension::finite(q + 1.0), ExtendedReal(D)), v) - 1e-10);
    EXPECT_GE(b, bound(make(rho, n, Dimension::finite(q), ExtendedReal(D * 1.3)), v) - 1e-10);
    EXPECT_GE(b, bound(make(rho, n, Dimension::infinite(), ExtendedReal(D)), v) - 1e-10);
  }
}

TEST(Properties, RandomScaleCovariance) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> urho(-3.0, 3.0), uq(0.0, 4.0), uD(0.3, 3.0), uv(0.05, 0.95);
  for (int trial = 0; trial < 5; ++trial) {
    const double rho = urho(rng), q = uq(rng), D = uD(rng), v = uv(rng);
    const double b = bound(make(rho, 3, Dimension::finite(q), ExtendedReal(D)), v);
    const double lambda = 1.0 + trial;
    const double s = bound(make(rho / (lambda * lambda), 3, Dimension::finite(q), ExtendedReal(D * lambda)), v);
    EXPECT_NEAR(s * lambda, b, 1e-8 * b) << rho << " " << q << " " << D << " " << v;
  }
}

TEST(Properties, RandomSymmetry) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> urho(-3.0, 3.0), uD(0.3, 3.0), uv(0.05, 0.45);
  for (int trial = 0; trial < 6; ++trial) {
    const double rho = urho(rng), D = uD(rng), v = uv(rng);
    const Dimension q = trial % 2 ? Dimension::infinite() : Dimension::finite(1.5);
    const CDDParams c = make(rho, 2, q, ExtendedReal(D));
    const double a = bound(c, v), b = bound(c, 1 - v);
    EXPECT_NEAR(a, b, 1e-10 * a);
  }
}

TEST(Properties, ProfileVanishesAtEnds) {
  const CDDParams c = make(-1.0, 3, Dimension::finite(1.0), ExtendedReal(1.0));
  double prev = 0.0;
  for (double v : {1e-6, 1e-4, 1e-2}) {
    const double b = bound(c, v);
    EXPECT_GT(b, prev);
    prev = b;
  }
  EXPECT_LT(bound(c, 1e-6), 1e-3);
}
