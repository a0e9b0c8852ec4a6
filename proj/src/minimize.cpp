#include "cddiso/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cddiso/errors.hpp"

namespace cddiso {

namespace {

void keep_best(ScalarMin& best, double x, double fx) {
  if (fx < best.fx || (fx == best.fx && x < best.x)) best = {x, fx};
}

}  // namespace

ScalarMin golden_section(const std::function<double(double)>& f, double a, double b, double xtol) {
  if (!(a <= b)) throw DomainError("golden_section: a > b");
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  ScalarMin best{a, f(a)};
  keep_best(best, b, f(b));
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  keep_best(best, c, fc);
  keep_best(best, d, fd);
  for (int it = 0; it < 500 && b - a > xtol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
      keep_best(best, c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
      keep_best(best, d, fd);
    }
  }
  return best;
}

ScalarMin scan_and_refine(const std::function<double(double)>& f, double a, double b, int points, double xtol) {
  if (points < 3) throw DomainError("scan_and_refine: need at least 3 points");
  std::vector<double> xs(points), fs(points);
  int imin = 0;
  for (int i = 0; i < points; ++i) {
    xs[i] = i + 1 == points ? b : a + (b - a) * i / (points - 1);
    fs[i] = f(xs[i]);
    if (fs[i] < fs[imin]) imin = i;
  }
  const int lo = std::max(imin - 1, 0), hi = std::min(imin + 1, points - 1);
  ScalarMin best = golden_section(f, xs[lo], xs[hi], xtol);
  keep_best(best, xs[imin], fs[imin]);
  return best;
}

}  // namespace cddiso
