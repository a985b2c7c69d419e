#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "repot/rational.hpp"

namespace repot {

/// A point of R^d.
class Point {
  public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

    [[nodiscard]] std::size_t dim() const { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] const std::vector<double>& coords() const { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

  private:
    std::vector<double> coords_;
};

/// Euclidean distance. Throws DimensionMismatch.
double distance(const Point& a, const Point& b);
double squared_distance(const Point& a, const Point& b);

/// Finitely supported probability measure on R^d.
///
/// Weights are positive and sum to one within 1e-12. A total mass off by at
/// most 1e-9 is renormalized at construction; anything larger is rejected.
/// When constructed from exact fractions the measure also carries the exact
/// weights, which must sum to exactly one.
class DiscreteMeasure {
  public:
    DiscreteMeasure(std::vector<Point> points, std::vector<double> weights);
    DiscreteMeasure(std::vector<Point> points, std::vector<Rational> weights);

    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const Point& point(std::size_t i) const { return points_[i]; }
    [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }
    [[nodiscard]] const std::vector<Point>& points() const { return points_; }
    [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

    [[nodiscard]] bool has_exact_weights() const { return exact_.has_value(); }
    /// Throws std::logic_error when the measure has no exact weights.
    [[nodiscard]] const std::vector<Rational>& exact_weights() const;

    [[nodiscard]] double max_weight() const;
    [[nodiscard]] double min_weight() const;
    /// Largest pairwise distance between atoms.
    [[nodiscard]] double diameter() const;
    [[nodiscard]] double min_pairwise_distance() const;

  private:
    void validate_geometry();

    std::vector<Point> points_;
    std::vector<double> weights_;
    std::optional<std::vector<Rational>> exact_;
    std::size_t dim_ = 0;
};

struct GaussianProfile {
    double sigma;
};
/// Student-t with nu degrees of freedom; nu = 1 is the Cauchy law. d = 1 only.
struct CauchyProfile {
    double nu;
};
/// Uniform law on [-a, a]. d = 1 only.
struct UniformProfile {
    double a;
};
/// Density K exp(-g(|x|)) with g given on a radial grid and interpolated
/// linearly between grid points. The density vanishes beyond the last node.
struct ExpGProfile {
    std::vector<double> grid_r;
    std::vector<double> grid_g;
};

using RadialProfile = std::variant<GaussianProfile, CauchyProfile, UniformProfile, ExpGProfile>;

/// Radially symmetric, absolutely continuous probability measure on R^d.
class RadialMeasure {
  public:
    /// Validates parameters and normalization (total mass 1 within 1e-9).
    RadialMeasure(std::size_t dim, RadialProfile profile);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const RadialProfile& profile() const { return profile_; }
    [[nodiscard]] bool unimodal() const { return unimodal_; }

    /// Density at any point of modulus s.
    [[nodiscard]] double density(double s) const;
    /// Radial integrand d ω_d ρ(s) s^{d-1}, the density of |X|.
    [[nodiscard]] double radial_density(double s) const;
    /// Radius beyond which the density vanishes (+inf when unbounded).
    [[nodiscard]] double support_radius() const;
    /// Natural length scale of the profile.
    [[nodiscard]] double scale() const;
    /// Radii where the density is not smooth (grid nodes, support edge).
    [[nodiscard]] std::vector<double> knots() const;
    [[nodiscard]] std::string name() const;

  private:
    [[nodiscard]] double unnormalized_density(double s) const;

    std::size_t dim_;
    RadialProfile profile_;
    double norm_ = 1.0;
    bool unimodal_ = true;
};

using Measure = std::variant<DiscreteMeasure, RadialMeasure>;

/// Volume of the unit ball in R^d.
double unit_ball_volume(std::size_t d);

Measure parse_measure(std::string_view json_text);
/// JSON text accepted by parse_measure. Exact weights are written as "p/q".
std::string serialize(const DiscreteMeasure& m);
std::string serialize(const RadialMeasure& m);

/// Mass of the closed (or open) Euclidean ball around center.
double ball_mass(const DiscreteMeasure& rho, const Point& center, double radius, bool closed = true);

} // namespace repot
