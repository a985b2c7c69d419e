#include "repot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "repot/errors.hpp"

namespace repot {
namespace {

using Vec = std::vector<double>;

struct RawBall {
    Vec center;
    double radius = -1.0; // negative: empty ball
};

double sq_dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

bool contains(const RawBall& b, const Vec& p) {
    if (b.radius < 0.0) return false;
    const double d = std::sqrt(sq_dist(b.center, p));
    return d <= b.radius * (1.0 + 1e-13) + 1e-15;
}

/// Solves G x = rhs by Gaussian elimination with partial pivoting.
/// Returns false when G is numerically singular.
bool solve_small(std::vector<Vec> g, Vec rhs, Vec& x, double scale) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
        }
        if (std::abs(g[piv][col]) <= 1e-13 * scale) return false;
        std::swap(g[piv], g[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = g[r][col] / g[col][col];
            for (std::size_t c = col; c < n; ++c) g[r][c] -= f * g[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= g[i][c] * x[c];
        x[i] = s / g[i][i];
    }
    return true;
}

RawBall smallest_ball_brute(const std::vector<Vec>& pts);

/// Ball whose boundary passes through every point of r, centered in their
/// affine hull.
RawBall circumball(const std::vector<Vec>& r) {
    if (r.empty()) return {};
    if (r.size() == 1) return {r.front(), 0.0};
    const std::size_t k = r.size() - 1;
    const Vec& p0 = r.front();
    std::vector<Vec> v(k, Vec(p0.size()));
    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t c = 0; c < p0.size(); ++c) v[i][c] = r[i + 1][c] - p0[c];
    }
    std::vector<Vec> g(k, Vec(k));
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < p0.size(); ++c) s += v[i][c] * v[j][c];
            g[i][j] = s;
        }
        rhs[i] = 0.5 * g[i][i];
        scale = std::max(scale, g[i][i]);
    }
    Vec lambda;
    if (!solve_small(g, rhs, lambda, scale)) return smallest_ball_brute(r);
    Vec center = p0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t c = 0; c < p0.size(); ++c) center[c] += lambda[i] * v[i][c];
    }
    double rad = 0.0;
    for (const auto& p : r) rad = std::max(rad, std::sqrt(sq_dist(center, p)));
    return {std::move(center), rad};
}

/// Fallback for affinely dependent support sets: tries every proper subset.
RawBall smallest_ball_brute(const std::vector<Vec>& pts) {
    RawBall best;
    best.radius = std::numeric_limits<double>::infinity();
    const std::size_t n = pts.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
        std::vector<Vec> sub;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) sub.push_back(pts[i]);
        }
        RawBall b = circumball(sub);
        if (b.radius >= best.radius) continue;
        if (std::all_of(pts.begin(), pts.end(), [&](const Vec& p) { return contains(b, p); })) {
            best = std::move(b);
        }
    }
    return best;
}

RawBall welzl(const std::vector<Vec>& pts, std::size_t n, std::vector<Vec>& boundary,
              std::size_t dim) {
    if (n == 0 || boundary.size() == dim + 1) return circumball(boundary);
    const Vec& p = pts[n - 1];
    RawBall b = welzl(pts, n - 1, boundary, dim);
    if (contains(b, p)) return b;
    boundary.push_back(p);
    b = welzl(pts, n - 1, boundary, dim);
    boundary.pop_back();
    return b;
}

} // namespace

Ball min_enclosing_ball(std::span<const Point> points) {
    if (points.empty()) throw ValidationError("min_enclosing_ball needs at least one point");
    const std::size_t dim = points.front().dim();
    std::vector<Vec> pts;
    pts.reserve(points.size());
    for (const auto& p : points) {
        if (p.dim() != dim) throw DimensionMismatch("points have different dimensions");
        pts.push_back(p.coords());
    }
    std::vector<Vec> boundary;
    RawBall b = welzl(pts, pts.size(), boundary, dim);
    return {Point(std::move(b.center)), b.radius};
}

} // namespace repot
