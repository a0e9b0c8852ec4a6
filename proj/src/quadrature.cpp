#include "cddiso/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cddiso/density.hpp"
#include "cddiso/errors.hpp"

namespace cddiso {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
using G7 = boost::math::quadrature::gauss<double, 7>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Piece {
  // t(u) and dt/du on u in [0, 1) for mapped ends, identity otherwise.
  enum class Map { kIdentity, kRight, kLeft } map;
  double origin;
};

struct Panel {
  double a, b;
  double result, error;
  int piece;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

class Integrator {
 public:
  Integrator(const std::function<double(double)>& f, const QuadratureOptions& opts) : f_(f), opts_(opts) {}

  double g(const Piece& p, double u) {
    double t = u, w = 1.0;
    if (p.map != Piece::Map::kIdentity) {
      const double r = 1.0 / (1.0 - u);
      const double s = u * r;
      t = p.map == Piece::Map::kRight ? p.origin + s : p.origin - s;
      w = r * r;
    }
    ++evaluations_;
    const double y = f_(t);
    if (!std::isfinite(y)) throw IntegrationError("integrand is not finite at t = " + std::to_string(t), 0.0,
                                                  std::numeric_limits<double>::infinity());
    // 0 * inf from the weight as u -> 1 is avoided by checking y first.
    return y == 0.0 ? 0.0 : y * w;
  }

  Panel panel(const Piece& p, int piece, double a, double b) {
    static const auto& xk = GK::abscissa();
    static const auto& wk = GK::weights();
    static const auto& wg = G7::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = g(p, c);
    double resg = fc * wg[0];
    double resk = fc * wk[0];
    double resabs = std::abs(resk);
    double f1[8], f2[8];
    for (std::size_t j = 1; j < xk.size(); ++j) {
      const double dx = h * xk[j];
      f1[j] = g(p, c - dx);
      f2[j] = g(p, c + dx);
      resk += wk[j] * (f1[j] + f2[j]);
      resabs += wk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
      if (j % 2 == 0) resg += wg[j / 2] * (f1[j] + f2[j]);
    }
    const double reskh = 0.5 * resk;
    double resasc = wk[0] * std::abs(fc - reskh);
    for (std::size_t j = 1; j < xk.size(); ++j) resasc += wk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    const double ah = std::abs(h);
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return Panel{a, b, resk * h, err, piece};
  }

  MassResult run(const std::vector<Piece>& pieces, const std::vector<std::pair<double, double>>& ranges) {
    std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
    double frozen_result = 0.0, frozen_error = 0.0;
    constexpr int kInitial = 4;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto [a, b] = ranges[i];
      for (int k = 0; k < kInitial; ++k) {
        const double lo = a + (b - a) * k / kInitial;
        const double hi = k + 1 == kInitial ? b : a + (b - a) * (k + 1) / kInitial;
        queue.push(panel(pieces[i], static_cast<int>(i), lo, hi));
      }
    }
    auto totals = [&]() {
      double r = frozen_result, e = frozen_error;
      auto copy = queue;
      while (!copy.empty()) {
        r += copy.top().result;
        e += copy.top().error;
        copy.pop();
      }
      return MassResult{r, e};
    };
    MassResult t = totals();
    double result = t.value, error = t.error_estimate;
    while (!queue.empty()) {
      if (error <= std::max(opts_.abs_tol, opts_.rel_tol * std::abs(result))) {
        t = totals();
        result = t.value;
        error = t.error_estimate;
        if (error <= std::max(opts_.abs_tol, opts_.rel_tol * std::abs(result))) break;
      }
      if (evaluations_ >= opts_.max_evaluations) {
        throw IntegrationError("integration budget exhausted", result, error);
      }
      const Panel p = queue.top();
      queue.pop();
      const double mid = 0.5 * (p.a + p.b);
      if (!(p.a < mid && mid < p.b) || (p.b - p.a) <= 4.0 * kEps * std::max(std::abs(p.a), std::abs(p.b))) {
        frozen_result += p.result;
        frozen_error += p.error;
        continue;
      }
      const Panel l = panel(pieces[p.piece], p.piece, p.a, mid);
      const Panel r = panel(pieces[p.piece], p.piece, mid, p.b);
      result += l.result + r.result - p.result;
      error += l.error + r.error - p.error;
      queue.push(l);
      queue.push(r);
    }
    t = totals();
    if (!std::isfinite(t.value)) throw IntegrationError("integral is not finite", t.value, t.error_estimate);
    return t;
  }

 private:
  const std::function<double(double)>& f_;
  QuadratureOptions opts_;
  std::size_t evaluations_ = 0;
};

}  // namespace

MassResult integrate(const std::function<double(double)>& f, ExtendedReal lo, ExtendedReal hi,
                     const QuadratureOptions& opts) {
  if (lo > hi) throw DomainError("integrate: lo > hi");
  if (lo == hi) return {};
  std::vector<Piece> pieces;
  std::vector<std::pair<double, double>> ranges;
  if (lo.is_finite() && hi.is_finite()) {
    pieces.push_back({Piece::Map::kIdentity, 0.0});
    ranges.emplace_back(lo.value(), hi.value());
  } else if (lo.is_finite()) {
    pieces.push_back({Piece::Map::kRight, lo.value()});
    ranges.emplace_back(0.0, 1.0);
  } else if (hi.is_finite()) {
    pieces.push_back({Piece::Map::kLeft, hi.value()});
    ranges.emplace_back(0.0, 1.0);
  } else {
    pieces.push_back({Piece::Map::kLeft, 0.0});
    ranges.emplace_back(0.0, 1.0);
    pieces.push_back({Piece::Map::kRight, 0.0});
    ranges.emplace_back(0.0, 1.0);
  }
  return Integrator(f, opts).run(pieces, ranges);
}

double cdf(const Density1D& density, ExtendedReal t) {
  const SupportInterval& s = density.support();
  if (t <= s.lo) return 0.0;
  if (t >= s.hi) {
    const ExtendedReal z = density.total_mass();
    if (!z.is_finite()) throw DomainError("cdf: density has infinite mass");
    return z.value();
  }
  const auto f = [&density](double x) { return density(x); };
  return integrate(f, s.lo, t, density.options()).value;
}

ExtendedReal cdf_inverse(const Density1D& density, double mass) {
  const ExtendedReal zext = density.total_mass();
  if (!zext.is_finite()) throw DomainError("cdf_inverse: density has infinite mass");
  const double z = zext.value();
  if (!(mass >= 0.0 && mass <= z)) throw DomainError("cdf_inverse: mass outside [0, total]");
  const SupportInterval& s = density.support();
  if (mass == 0.0) return s.lo;
  if (mass == z) return s.hi;

  // Bracket [a, b] with F(a) <= mass <= F(b).
  double a, b, fa, fb;
  if (s.lo.is_finite()) {
    a = s.lo.value();
    fa = 0.0;
  } else {
    a = s.hi.is_finite() ? s.hi.value() - 1.0 : 0.0;
    double step = 1.0;
    while ((fa = cdf(density, a)) > mass) {
      a -= step;
      step *= 2.0;
    }
  }
  if (s.hi.is_finite()) {
    b = s.hi.value();
    fb = z;
  } else {
    b = std::max(a + 1.0, 0.0);
    double step = 1.0;
    while ((fb = cdf(density, b)) < mass) {
      b += step;
      step *= 2.0;
    }
  }

  const double ftol = std::max(density.options().abs_tol, 4.0 * kEps * z);
  double ga = fa - mass, gb = fb - mass;
  int side = 0;
  double last_width = b - a;
  for (int it = 0; it < 400; ++it) {
    if (b - a <= 4.0 * kEps * std::max({std::abs(a), std::abs(b), kTiny})) break;
    double x = (ga == gb) ? 0.5 * (a + b) : a - ga * (b - a) / (gb - ga);
    if (!(x > a && x < b) || (it % 3 == 2 && b - a > 0.5 * last_width)) x = 0.5 * (a + b);
    if (it % 3 == 2) last_width = b - a;
    const double fx = cdf(density, x);
    const double gx = fx - mass;
    if (std::abs(gx) <= ftol) return x;
    if (gx < 0.0) {
      a = x;
      ga = gx;
      if (side == -1) gb *= 0.5;
      side = -1;
    } else {
      b = x;
      gb = gx;
      if (side == 1) ga *= 0.5;
      side = 1;
    }
  }
  return std::abs(ga) <= std::abs(gb) ? a : b;
}

}  // namespace cddiso
