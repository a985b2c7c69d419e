#include "repot/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "repot/errors.hpp"
#include "repot/ext_real.hpp"
#include "repot/quadrature.hpp"

namespace repot {
namespace {

constexpr double kSegmentTolerance = 1e-14;
constexpr double kNegligibleMass = 1e-17;
constexpr int kMaxSegments = 400;

} // namespace

RadialCDF::RadialCDF(RadialMeasure measure) : measure_(std::move(measure)) {
    const double L = measure_.scale();
    const double support = measure_.support_radius();
    auto f = [this](double s) { return measure_.radial_density(s); };

    std::vector<double> fixed{0.0};
    for (double k : measure_.knots()) {
        if (k > 0.0) fixed.push_back(k);
    }
    for (double s = L / 64.0; s < 4.0 * L && s < support; s *= 2.0) fixed.push_back(s);
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());

    nodes_ = {0.0};
    cumulative_ = {0.0};
    auto push_segment = [&](double b) {
        const double a = nodes_.back();
        const double mass = adaptive_simpson(f, a, b, kSegmentTolerance);
        nodes_.push_back(b);
        cumulative_.push_back(cumulative_.back() + mass);
        return mass;
    };
    for (std::size_t i = 1; i < fixed.size(); ++i) push_segment(fixed[i]);
    // Geometric ladder until the remaining tail is negligible or the support ends.
    double next = std::max(nodes_.back() * 2.0, 4.0 * L);
    for (int seg = 0; seg < kMaxSegments; ++seg) {
        if (nodes_.back() >= support) break;
        const double b = std::min(next, support);
        const double mass = push_segment(b);
        if (mass < kNegligibleMass && b >= 4.0 * L) break;
        next = b * 2.0;
    }
}

double RadialCDF::cdf(double r) const {
    if (!(r > 0.0)) return 0.0;
    if (r >= nodes_.back()) return std::min(1.0, cumulative_.back());
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
    const auto k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    auto f = [this](double s) { return measure_.radial_density(s); };
    const double value = cumulative_[k] + adaptive_simpson(f, nodes_[k], r, kSegmentTolerance);
    return std::clamp(value, 0.0, 1.0);
}

double RadialCDF::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
        throw OutOfRange("quantile level " + format_real(p) + " outside (0, 1)");
    }
    if (p >= cumulative_.back()) {
        throw OutOfRange("quantile level " + format_real(p) + " beyond the resolved support");
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), p);
    const auto k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    double lo = nodes_[k];
    double hi = nodes_[k + 1];
    // Newton on F with bisection whenever the step leaves the bracket.
    double x = lo + (hi - lo) * (p - cumulative_[k]) / (cumulative_[k + 1] - cumulative_[k]);
    for (int iter = 0; iter < 200; ++iter) {
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double F = cdf(x);
        if (F == p) return x;
        if (F < p) {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
        const double f = measure_.radial_density(x);
        const double step = f > 0.0 ? (F - p) / f : 0.0;
        x = f > 0.0 ? x - step : 0.5 * (lo + hi);
        if (f > 0.0 && std::abs(step) <= 1e-16 * std::max(1.0, x)) return x;
    }
    return 0.5 * (lo + hi);
}

double radial_cdf(const RadialMeasure& rho, double r) {
    if (!(r >= 0.0)) throw OutOfRange("radius must be nonnegative");
    return RadialCDF(rho).cdf(r);
}

double tau(const RadialCDF& cdf, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw OutOfRange("tau requires 0 < r < inf, got " + format_real(r));
    }
    const double F = cdf.cdf(r);
    if (!(F > 0.0) || !(F < 1.0) || r >= cdf.measure().support_radius()) {
        throw OutOfRange("r = " + format_real(r) + " is outside the interior of the support");
    }
    return cdf.quantile(1.0 - F);
}

double tau(const RadialMeasure& rho, double r) { return tau(RadialCDF(rho), r); }

Point radial_map(const RadialCDF& cdf, const Point& x) {
    if (x.dim() != cdf.measure().dim()) throw DimensionMismatch("point dimension differs from measure");
    double norm = 0.0;
    for (double c : x.coords()) norm += c * c;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw OriginInput("radial map is undefined at the origin");
    const double t = tau(cdf, norm);
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = -x[i] / norm * t;
    return Point(std::move(out));
}

Point radial_map(const RadialMeasure& rho, const Point& x) { return radial_map(RadialCDF(rho), x); }

} // namespace repot
