#pragma once

#include <functional>
#include <optional>

#include "cddiso/model_density.hpp"
#include "cddiso/quadrature.hpp"

namespace cddiso {

struct Jet {
  double value;
  double d1;
  double d2;
};

/// Warped product [-a, b] x S^(n-1) with metric dt^2 + (eps f(t))^2 g_sphere
/// and density proportional to p(t)^q.
class WarpedProduct {
 public:
  using JetFn = std::function<Jet(double)>;

  /// Requires n >= 3, 0 < q < inf, eps > 0, -a < b and f, p positive on
  /// [-a, b].
  WarpedProduct(int n, double q, double eps, double a, double b, JetFn f, JetFn p);

  /// f = p = J^(1/m) for base = (H, rho, m = n + q - 1); -a and b must lie
  /// inside the open support of J.
  static WarpedProduct canonical(int n, double q, double eps, double a, double b, const ModelParams& base);

  int n() const { return n_; }
  double q() const { return q_; }
  double eps() const { return eps_; }
  double a() const { return a_; }
  double b() const { return b_; }

  /// Jets at t in [-a, b]; DomainError outside.
  Jet f(double t) const;
  Jet p(double t) const;

 private:
  void require_inside(double t) const;

  int n_;
  double q_, eps_, a_, b_;
  JetFn f_, p_;
};

/// -(n-1) f''/f - q p''/p.
double ricci_radial(const WarpedProduct& wp, double t);

/// -f''/f + (n-2)(1 - eps^2 f'^2)/(eps^2 f^2) - q (f'/f)(p'/p).
double ricci_spherical(const WarpedProduct& wp, double t);

/// min over grid_points equally spaced t in [-a, b] of the two Ricci
/// eigenvalues minus rho.
double check_cdd(const WarpedProduct& wp, double rho, int grid_points);

/// profile_flat of f^(n-1) p^q on [-a, b].
double slab_profile(const WarpedProduct& wp, double v, const QuadratureOptions& opts = {});

}  // namespace cddiso
