#pragma once

#include <vector>

#include "repot/measures.hpp"

namespace repot {

/// Cumulative distribution of |X| for a radial measure,
/// F(r) = ∫_0^r d ω_d ρ(s) s^{d-1} ds.
///
/// The constructor integrates the radial density once over a node grid
/// (knots of the profile plus a geometric ladder scaled to the profile) and
/// caches the cumulative masses; evaluations integrate only the partial
/// segment. The object is immutable afterwards.
class RadialCDF {
  public:
    explicit RadialCDF(RadialMeasure measure);

    [[nodiscard]] const RadialMeasure& measure() const { return measure_; }

    /// F(r); 0 for r <= 0.
    [[nodiscard]] double cdf(double r) const;
    /// 1 - F(r).
    [[nodiscard]] double survival(double r) const { return 1.0 - cdf(r); }
    /// F^{-1}(p) by bisection. Throws OutOfRange unless 0 < p < 1.
    [[nodiscard]] double quantile(double p) const;
    /// Total mass seen by the quadrature (1 up to the quadrature error).
    [[nodiscard]] double total_mass() const { return cumulative_.back(); }

  private:
    RadialMeasure measure_;
    std::vector<double> nodes_;
    std::vector<double> cumulative_;
};

double radial_cdf(const RadialMeasure& rho, double r);

/// τ(r) = F^{-1}(1 - F(r)). Throws OutOfRange unless 0 < F(r) < 1.
double tau(const RadialCDF& cdf, double r);
double tau(const RadialMeasure& rho, double r);

/// T(x) = -(x/|x|) τ(|x|). Throws OriginInput for x = 0.
Point radial_map(const RadialCDF& cdf, const Point& x);
Point radial_map(const RadialMeasure& rho, const Point& x);

} // namespace repot
