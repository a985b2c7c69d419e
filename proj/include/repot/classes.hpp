#pragma once

#include <optional>
#include <string>

#include "repot/ext_real.hpp"
#include "repot/measures.hpp"
#include "repot/radial.hpp"

namespace repot {

/// γ(a, x) = ∫_0^x t^{a-1} e^{-t} dt (not regularized).
double lower_incomplete_gamma(double a, double x);

/// κ_ρ(t) for a Gaussian of scale sigma in R^d, through γ(d/2, t²/2σ²).
double gaussian_ball_mass(std::size_t d, double sigma, double t);

struct ClassWitness {
    double r_rho = 0.0;
    double kappa_2r = 0.0;
    /// inf_x ρ(B^c(x, 2 r_ρ)).
    double survival_2r = 0.0;
    std::optional<double> min_weight;
};

struct ClassConstantReport {
    /// unimodal-radial, tail-control, log-concave or discrete.
    std::string class_name;
    double constant = 0.0;
    bool applicable = false;
    /// The δ of the tail-control and discrete classes.
    std::optional<double> delta;
    ClassWitness witness;
};

/// 𝒞∞ for h = 1/t: 1 / (2 r_ρ) with F(r_ρ) = 1/2.
double c_infty_radial(const RadialCDF& cdf);
double c_infty_radial(const RadialMeasure& rho);

/// 𝒞 for h = 1/t and two marginals, evaluated on the reflection map:
/// ∫_0^1 du / (F⁻¹(u) + F⁻¹(1-u)).
double integral_cost_radial(const RadialCDF& cdf);

/// κ_ρ(2 r_ρ) - 1/2.
ClassConstantReport unimodal_constant(const RadialMeasure& rho);

/// Applicable when inf_x ρ(B^c(x, 2 r_ρ)) <= δ; constant (1 - 2δ)/4.
ClassConstantReport tail_control_constant(const Measure& rho, double delta);

/// Discrete log-concavity test of the density of |X|, then tail control
/// with δ = 1/4. Throws NotLogConcave.
ClassConstantReport log_concave_check(const RadialMeasure& rho);

/// δ = smallest weight, constant δ/2. Throws WeightTooLarge if an atom
/// carries mass >= 1/2.
ClassConstantReport discrete_class_constant(const DiscreteMeasure& rho);

/// κ_ρ(2/C∞) - 1/2 >= smallest weight.
bool trim_min_mass_check(const DiscreteMeasure& rho, ExtReal C_sup);

/// JSON object for a report.
std::string to_json(const ClassConstantReport& report);

} // namespace repot
