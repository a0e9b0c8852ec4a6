#pragma once

#include <functional>

namespace cddiso {

struct ScalarMin {
  double x;
  double fx;
};

/// Golden-section search for a minimum of f on [a, b], stopping once the
/// bracket is narrower than xtol. Returns the best point evaluated, the
/// smallest such x on ties. Endpoints are evaluated too.
ScalarMin golden_section(const std::function<double(double)>& f, double a, double b, double xtol);

/// Evaluates f on `points` equally spaced nodes of [a, b], takes the first
/// smallest node and refines with golden_section on its neighbouring cells.
ScalarMin scan_and_refine(const std::function<double(double)>& f, double a, double b, int points, double xtol);

}  // namespace cddiso
