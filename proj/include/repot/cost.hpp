#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repot/ext_real.hpp"
#include "repot/measures.hpp"

namespace repot {

/// Strictly decreasing continuous pointwise cost profile h : [0, ∞) → (0, ∞].
class HFunction {
  public:
    enum class Kind { power, expdecay, tabulated };

    /// h(t) = t^{-p}, h(0) = +inf.
    static HFunction power(double p);
    /// h(t) = e^{-t}.
    static HFunction expdecay();
    /// Piecewise-linear interpolation of strictly decreasing samples. The
    /// first abscissa must be 0; beyond the last sample h stays constant.
    static HFunction tabulated(std::vector<double> t, std::vector<double> h);
    /// Parses "power:<p>", "expdecay" or "table:<file.csv>" (CSV "t,h").
    static HFunction parse(std::string_view spec);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] ExtReal h0() const;
    /// inf_t h(t).
    [[nodiscard]] double infimum() const;
    [[nodiscard]] std::string name() const;

    /// h(t); t = +inf gives the infimum.
    [[nodiscard]] ExtReal eval(double t) const;
    /// Generalized inverse inf{t >= 0 : h(t) <= s}: 0 when s >= h(0), +inf
    /// when s <= inf h.
    [[nodiscard]] double inverse(ExtReal s) const;

  private:
    HFunction() = default;

    Kind kind_ = Kind::power;
    double p_ = 1.0;
    std::vector<double> t_;
    std::vector<double> h_;
    std::string source_;
};

inline ExtReal h_eval(const HFunction& h, double t) { return h.eval(t); }
inline double h_inv(const HFunction& h, ExtReal s) { return h.inverse(s); }

/// ψ(t) = h(2 h^{-1}(t)), non-decreasing in t.
ExtReal psi(const HFunction& h, ExtReal t);

/// N points of R^d sharing one dimension.
class Configuration {
  public:
    explicit Configuration(std::vector<Point> points);

    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] const std::vector<Point>& points() const { return points_; }
    [[nodiscard]] double min_pairwise_distance() const;

  private:
    std::vector<Point> points_;
};

/// Σ_{i<j} h(|x_i - x_j|).
ExtReal config_cost(const HFunction& h, const Configuration& cfg);

/// Membership in 𝓑_β: some pair strictly closer than β.
bool in_B_beta(const Configuration& cfg, double beta);
/// Membership in 𝓑^B: configuration cost strictly above B.
bool in_B_upper(const HFunction& h, const Configuration& cfg, ExtReal bound);

} // namespace repot
