#pragma once

#include <cmath>

#include "repot/rational.hpp"

namespace repot::detail {

/// Comparison thresholds for the two arithmetic modes. Rational arithmetic
/// is exact, so every threshold is zero there.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double pivot_tol() { return 1e-9; }
    static double cost_tol() { return 1e-11; }
    static double flow_tol() { return 1e-15; }
    static double abs(double v) { return std::abs(v); }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational pivot_tol() { return 0; }
    static Rational cost_tol() { return 0; }
    static Rational flow_tol() { return 0; }
    static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

} // namespace repot::detail
