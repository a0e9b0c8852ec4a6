#pragma once

#include <optional>
#include <string>

#include "cddiso/extended.hpp"
#include "cddiso/model_density.hpp"
#include "cddiso/quadrature.hpp"

namespace cddiso {

/// Curvature-dimension-diameter parameters; m = n + q - 1.
struct CDDParams {
  double rho = 0.0;
  int n = 2;
  Dimension q = Dimension::finite(0.0);
  ExtendedReal D = ExtendedReal::pos_inf();

  Dimension m() const;
  /// rho / m; requires 0 < m < inf.
  double delta() const;
  /// Throws ParameterError unless n >= 1, m > 0, rho finite and D > 0.
  void validate() const;
};

enum class CaseId { kTrivial = 0, kCase1 = 1, kCase2, kCase3, kCase4, kCase5, kCase6, kCase7 };

/// "1".."7" or "trivial".
std::string to_string(CaseId id);

struct BoundResult {
  double value = 0.0;
  std::optional<double> h_star;
  /// Balanced left endpoint; +inf for D = inf.
  std::optional<ExtendedReal> a_star;
  CaseId case_id = CaseId::kTrivial;
};

/// a in (0, D) with int_{-a}^0 J / int_{-a}^{D-a} J = v.
double solve_balance(const ModelParams& params, double D, double v, const QuadratureOptions& opts = {});

/// inf over H of 1/int_{-a_H}^{D-a_H} J_{H,rho,m}, with the minimizing witness.
BoundResult bound_at(const CDDParams& cdd, double v, const QuadratureOptions& opts = {});

/// min over (H, a) of max(v/int_{-a}^0 J_H, (1-v)/int_0^{D-a} J_H) from
/// h_grid x a_grid scans followed by golden-section refinement. D finite.
double bound_oracle_grid(const CDDParams& cdd, double v, int h_grid, int a_grid, const QuadratureOptions& opts = {});

CaseId case_dispatch(const CDDParams& cdd);

/// (N/D) inf_{xi >= 0} (min(v,1-v)(xi+1)^N + max(v,1-v) xi^N)^((N-1)/N) / ((xi+1)^N - xi^N), N = n + q.
double case3_closed_form(int n, double q, double D, double v);

/// (1/D) inf_{w > 0} (min(v,1-v) + w) log(1 + 1/w).
double case7_closed_form(double D, double v);

/// pi / sqrt(rho / (n + q - 1)).
double bonnet_myers_diameter(double rho, int n, double q);

/// The bound evaluated through the reparameterized one-parameter family of
/// the dispatched case (sin, power, sinh/exp/cosh, shifted Gaussian or
/// exponential) instead of the (H, a) search.
double case_family_bound(const CDDParams& cdd, double v, const QuadratureOptions& opts = {});

}  // namespace cddiso
