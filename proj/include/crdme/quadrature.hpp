#pragma once

#include <functional>
#include <stdexcept>

#include "crdme/geometry.hpp"

namespace crdme {

/// Thrown when the adaptive quadrature cannot reach the requested tolerance
/// within its subdivision depth limit.
class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Integrand2d = std::function<double(double, double)>;

/// Adaptive 2-d integration of f over an axis-aligned rectangle to an
/// absolute tolerance.
///
/// Each panel is evaluated with a tensor-product Gauss-Kronrod 7/15 pair
/// (225 evaluations); the embedded Gauss result supplies the error estimate.
/// Panels that miss their share of the tolerance are split into four
/// quadrants, each inheriting a quarter of it. Subdivision is capped at
/// depth 40; exceeding the cap throws quadrature_error. The refinement order
/// is fixed, so results are bitwise reproducible for a given integrand.
double integrate_rect(const Integrand2d& f, const AxisRect& rect, double tol);

/// integrate_rect over the centered unit square [-1/2, 1/2]^2.
double integrate_unit_square(const Integrand2d& f, double tol = 1e-11);

}  // namespace crdme
