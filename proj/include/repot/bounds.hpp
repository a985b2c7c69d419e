#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repot/cost.hpp"
#include "repot/ext_real.hpp"
#include "repot/measures.hpp"
#include "repot/rational.hpp"
#include "repot/solvers.hpp"

namespace repot {

inline constexpr double kBoundTolerance = 1e-9;

struct BoundReport {
    ExtReal C_integral;
    ExtReal C_sup;
    ExtReal bound_value;
    std::string bound_name;
    bool holds = false;
    /// C_integral - bound_value (+inf when C_integral is infinite).
    ExtReal slack;
};

BoundReport make_bound_report(ExtReal C_integral, ExtReal C_sup, ExtReal bound, std::string name);

/// 𝔪(t) = (N κ_ρ(t) - 1) / (N(N-1)); may be non-positive.
double m_frak(const Measure& rho, double t, std::size_t N);

/// ψ(C∞/(N(N-1))) · 𝔪(h⁻¹(C∞/(N(N-1)))) with no hypothesis check. A
/// non-positive 𝔪 paired with ψ = +inf gives the vacuous value 0.
ExtReal main_bound_formula_N(const Measure& rho, const HFunction& h, std::size_t N, ExtReal C_sup);

/// Throws AssumptionViolated when h(0) = +inf and κ(ρ) >= 1/N.
void check_assumption_a(const Measure& rho, const HFunction& h, std::size_t N);

/// Checked form of main_bound_formula_N.
ExtReal main_bound_N(const Measure& rho, const HFunction& h, std::size_t N, ExtReal C_sup);

/// Two-marginal bound ψ(C∞/2) · (2 κ_ρ(h⁻¹(C∞/2)) - 1).
ExtReal main_bound_2_formula(const Measure& rho, const HFunction& h, ExtReal C_sup);
ExtReal main_bound_2(const Measure& rho, const HFunction& h, ExtReal C_sup);

template <class T>
struct Sandwich {
    T lower;
    T observed;
    T upper;
    [[nodiscard]] bool holds(T tol = T(0)) const { return lower <= observed + tol && observed <= upper + tol; }
};

/// max{0, 2ρ(A) - 1} <= λ(A×A) <= ρ(A) for a two-marginal coupling.
Sandwich<double> frechet_check(const DiscreteMeasure& rho, const Coupling& lambda,
                               std::span<const std::size_t> subset);
/// Same in exact arithmetic; needs exact coupling weights.
Sandwich<Rational> frechet_check_exact(const DiscreteMeasure& rho, const Coupling& lambda,
                                       std::span<const std::size_t> subset);

/// κ_ρ(h⁻¹(C∞/(N(N-1)))) > 1/N.
bool positivity_check(const Measure& rho, const HFunction& h, std::size_t N, ExtReal C_sup);

struct Verification {
    ExtReal C_integral;
    ExtReal C_sup;
    BoundReport main;
    /// Present for N = 2 only.
    std::optional<BoundReport> two_marginal;
    bool positivity = false;
    /// h(0) < +inf or κ(ρ) < 1/N. The bounds are evaluated either way.
    bool assumption_a = false;
    [[nodiscard]] bool holds() const;
};

/// Solves both problems and evaluates the bound formulas.
Verification verify_main(const DiscreteMeasure& rho, const HFunction& h, std::size_t N,
                         const SolverOptions& opts = {});

} // namespace repot
