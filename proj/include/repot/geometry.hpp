#pragma once

#include <span>

#include "repot/measures.hpp"

namespace repot {

struct Ball {
    Point center;
    double radius = 0.0;
};

/// Smallest closed Euclidean ball containing every point (Welzl's recursion
/// with exact circumsphere solves on the support set).
/// Throws DimensionMismatch for mixed dimensions, ValidationError when empty.
Ball min_enclosing_ball(std::span<const Point> points);

} // namespace repot
