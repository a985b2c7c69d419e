#pragma once

#include <vector>

#include "repot/measures.hpp"
#include "repot/radial.hpp"

namespace repot {

enum class BallKind { closed, open };

/// Slack used when deciding whether a set of atoms fits in a ball of radius α.
inline constexpr double kBallTolerance = 1e-12;

/// Largest atom count for which the d >= 2 subset search is attempted.
inline constexpr std::size_t kMaxKappaAtoms = 20;

/// κ_ρ(α) = sup_x ρ(B(x, α)) for a discrete measure, exact.
///
/// In d = 1 a sliding window over the sorted atoms is used. In d >= 2 atom
/// subsets are searched in decreasing weight order with branch-and-bound, a
/// subset being coverable iff its minimum enclosing ball has radius
/// <= α + 1e-12 (closed) or < α - 1e-12 (open). Throws InstanceTooLarge for
/// more than 20 atoms in d >= 2.
double kappa_discrete(const DiscreteMeasure& rho, double alpha, BallKind kind = BallKind::closed);

/// Pointwise concentration κ(ρ), the heaviest atom.
inline double pointwise_concentration(const DiscreteMeasure& rho) { return rho.max_weight(); }

/// κ_ρ as a right-continuous step function of the radius (closed balls).
class ConcentrationProfile {
  public:
    ConcentrationProfile(std::vector<double> breakpoints, std::vector<double> values);

    [[nodiscard]] const std::vector<double>& breakpoints() const { return breakpoints_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    /// κ_ρ(α): value at the last breakpoint <= α (+1e-12).
    [[nodiscard]] double operator()(double alpha) const;

  private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

/// Breakpoints are the radii of minimum enclosing balls of atom subsets with
/// at most d + 1 elements; only radii where κ increases are kept.
ConcentrationProfile concentration_profile(const DiscreteMeasure& rho);

/// κ_ρ(t) = F(t) for a unimodal radial measure. Throws NotUnimodal.
double kappa_radial(const RadialCDF& cdf, double t);
double kappa_radial(const RadialMeasure& rho, double t);

/// sup{r : κ_ρ(r) <= level}.
///
/// For a discrete measure this is the first breakpoint whose value exceeds
/// the level (the supremum is not attained with closed balls), and 0 when
/// κ(ρ) > level. For a radial measure it is F^{-1}(level).
double r_rho(const DiscreteMeasure& rho, double level);
double r_rho(const RadialCDF& cdf, double level);
double r_rho(const RadialMeasure& rho, double level);

double kappa(const Measure& rho, double t);
double r_rho(const Measure& rho, double level);

} // namespace repot
