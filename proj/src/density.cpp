#include "cddiso/density.hpp"

#include <mutex>

#include "cddiso/errors.hpp"

namespace cddiso {

struct Density1D::State {
  Fn f;
  SupportInterval support;
  QuadratureOptions opts;
  std::optional<Fn> dlog;
  mutable std::once_flag once;
  mutable ExtendedReal total;
};

Density1D::Density1D(Fn evaluator, SupportInterval support, QuadratureOptions opts) {
  if (support.lo > support.hi) throw DomainError("Density1D: support lo > hi");
  auto s = std::make_shared<State>();
  s->f = std::move(evaluator);
  s->support = support;
  s->opts = opts;
  state_ = std::move(s);
}

Density1D Density1D::model(const ModelParams& p, std::optional<SupportInterval> window, QuadratureOptions opts) {
  SupportInterval s = support_j(p);
  if (window) {
    s.lo = std::max(s.lo, window->lo);
    s.hi = std::min(s.hi, window->hi);
    if (s.lo > s.hi) throw DomainError("Density1D::model: window misses the support");
  }
  Density1D d([p](double t) { return eval_j(p, t); }, s, opts);
  if (p.m.is_infinite()) {
    return d.with_log_derivative([p](double t) { return p.H - p.rho * t; });
  }
  const double m = p.m.value();
  return d.with_log_derivative([p, m](double t) {
    const RootJet r = root_jet(p, t);
    return m * r.d1 / r.value;
  });
}

Density1D Density1D::with_log_derivative(Fn dlog) const {
  auto s = std::make_shared<State>();
  s->f = state_->f;
  s->support = state_->support;
  s->opts = state_->opts;
  s->dlog = std::move(dlog);
  return Density1D(std::move(s));
}

const SupportInterval& Density1D::support() const { return state_->support; }
const QuadratureOptions& Density1D::options() const { return state_->opts; }
const std::optional<Density1D::Fn>& Density1D::log_derivative() const { return state_->dlog; }

double Density1D::operator()(double t) const {
  if (!state_->support.contains(t)) return 0.0;
  return state_->f(t);
}

ExtendedReal Density1D::total_mass() const {
  const State& s = *state_;
  std::call_once(s.once, [this, &s] {
    const auto f = [this](double t) { return (*this)(t); };
    const bool bounded = s.support.is_bounded();
    try {
      s.total = integrate(f, s.support.lo, s.support.hi, s.opts).value;
    } catch (const IntegrationError&) {
      if (bounded) throw;
      s.total = ExtendedReal::pos_inf();
    }
  });
  return s.total;
}

Density1D Density1D::restricted(ExtendedReal lo, ExtendedReal hi) const {
  SupportInterval s{std::max(support().lo, lo), std::min(support().hi, hi)};
  if (s.lo > s.hi) throw DomainError("Density1D::restricted: empty intersection");
  Density1D d(state_->f, s, state_->opts);
  return state_->dlog ? d.with_log_derivative(*state_->dlog) : d;
}

Density1D Density1D::reflected() const {
  const Fn f = state_->f;
  Density1D d([f](double t) { return f(-t); }, SupportInterval{-support().hi, -support().lo}, state_->opts);
  if (!state_->dlog) return d;
  const Fn g = *state_->dlog;
  return d.with_log_derivative([g](double t) { return -g(-t); });
}

Density1D Density1D::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("Density1D::scaled: factor must be positive");
  const Fn f = state_->f;
  Density1D d([f, c](double t) { return c * f(t); }, support(), state_->opts);
  return state_->dlog ? d.with_log_derivative(*state_->dlog) : d;
}

Density1D Density1D::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("Density1D::dilated: factor must be positive");
  const Fn f = state_->f;
  auto stretch = [lambda](ExtendedReal x) { return x.is_finite() ? ExtendedReal(lambda * x.value()) : x; };
  Density1D d([f, lambda](double t) { return f(t / lambda); }, SupportInterval{stretch(support().lo), stretch(support().hi)},
              state_->opts);
  if (!state_->dlog) return d;
  const Fn g = *state_->dlog;
  return d.with_log_derivative([g, lambda](double t) { return g(t / lambda) / lambda; });
}

}  // namespace cddiso
