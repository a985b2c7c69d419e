#pragma once

#include <cmath>
#include <functional>

#include "repot/errors.hpp"

namespace repot {

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance tol.
/// Throws QuadratureNotConverged when max_depth is reached before the local
/// error estimate drops below its share of the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

} // namespace repot
