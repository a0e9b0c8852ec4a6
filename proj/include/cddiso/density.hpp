#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "cddiso/extended.hpp"
#include "cddiso/model_density.hpp"
#include "cddiso/quadrature.hpp"

namespace cddiso {

/// Non-negative weight on the real line restricted to a support interval.
///
/// Immutable; copies share the lazily computed total mass, which is
/// computed at most once even under concurrent access.
class Density1D {
 public:
  using Fn = std::function<double(double)>;

  Density1D(Fn evaluator, SupportInterval support, QuadratureOptions opts = {});

  /// J_{H,rho,m} restricted to window (or to its full support).
  static Density1D model(const ModelParams& p, std::optional<SupportInterval> window = std::nullopt,
                         QuadratureOptions opts = {});

  /// Copy carrying an analytic (log f)' used by the curvature checks.
  Density1D with_log_derivative(Fn dlog) const;

  /// f(t), zero outside the support.
  double operator()(double t) const;

  const SupportInterval& support() const;
  const QuadratureOptions& options() const;
  const std::optional<Fn>& log_derivative() const;

  /// Integral over the support; +inf when the integral diverges on an
  /// unbounded support.
  ExtendedReal total_mass() const;

  /// Same weight on support intersected with [lo, hi].
  Density1D restricted(ExtendedReal lo, ExtendedReal hi) const;
  /// t -> f(-t).
  Density1D reflected() const;
  /// c * f.
  Density1D scaled(double c) const;
  /// t -> f(t / lambda) on lambda * support.
  Density1D dilated(double lambda) const;

 private:
  struct State;
  explicit Density1D(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

}  // namespace cddiso
