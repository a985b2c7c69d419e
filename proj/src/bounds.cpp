#include "repot/bounds.hpp"

#include <limits>

#include "repot/concentration.hpp"
#include "repot/errors.hpp"

namespace repot {
namespace {

double pair_count(std::size_t N) { return static_cast<double>(N) * static_cast<double>(N - 1); }

// ψ(level) · factor, treating ∞ · (non-positive) as the vacuous bound 0.
ExtReal scaled(ExtReal psi_value, double factor) {
    if (psi_value.is_infinite() && factor <= 0.0) return 0.0;
    if (psi_value.is_infinite()) return ExtReal::infinity();
    return psi_value.value() * factor;
}

void require_positive(ExtReal C_sup) {
    if (!(C_sup > ExtReal(0.0))) throw ValidationError("supremal cost must be positive");
}

double pointwise(const Measure& rho) {
    if (const auto* d = std::get_if<DiscreteMeasure>(&rho)) return pointwise_concentration(*d);
    return 0.0;
}

} // namespace

BoundReport make_bound_report(ExtReal C_integral, ExtReal C_sup, ExtReal bound, std::string name) {
    BoundReport r;
    r.C_integral = C_integral;
    r.C_sup = C_sup;
    r.bound_value = bound;
    r.bound_name = std::move(name);
    if (C_integral.is_infinite()) {
        r.holds = true;
        r.slack = ExtReal::infinity();
    } else if (bound.is_infinite()) {
        r.holds = false;
        r.slack = -std::numeric_limits<double>::max();
    } else {
        r.slack = C_integral.value() - bound.value();
        r.holds = C_integral.value() >= bound.value() - kBoundTolerance;
    }
    return r;
}

double m_frak(const Measure& rho, double t, std::size_t N) {
    if (N < 2) throw ValidationError("N must be at least 2");
    if (!(t >= 0.0)) throw ValidationError("t must be nonnegative");
    const double n = static_cast<double>(N);
    return (n * kappa(rho, t) - 1.0) / pair_count(N);
}

ExtReal main_bound_formula_N(const Measure& rho, const HFunction& h, std::size_t N, ExtReal C_sup) {
    require_positive(C_sup);
    const ExtReal level = C_sup / pair_count(N);
    return scaled(psi(h, level), m_frak(rho, h_inv(h, level), N));
}

void check_assumption_a(const Measure& rho, const HFunction& h, std::size_t N) {
    if (h.h0().is_infinite() && !(pointwise(rho) < 1.0 / static_cast<double>(N))) {
        throw AssumptionViolated("h(0) = +inf requires every atom to carry mass below 1/N");
    }
}

ExtReal main_bound_N(const Measure& rho, const HFunction& h, std::size_t N, ExtReal C_sup) {
    check_assumption_a(rho, h, N);
    return main_bound_formula_N(rho, h, N, C_sup);
}

ExtReal main_bound_2_formula(const Measure& rho, const HFunction& h, ExtReal C_sup) {
    require_positive(C_sup);
    const ExtReal level = C_sup / 2.0;
    return scaled(psi(h, level), 2.0 * kappa(rho, h_inv(h, level)) - 1.0);
}

ExtReal main_bound_2(const Measure& rho, const HFunction& h, ExtReal C_sup) {
    check_assumption_a(rho, h, 2);
    return main_bound_2_formula(rho, h, C_sup);
}

Sandwich<double> frechet_check(const DiscreteMeasure& rho, const Coupling& lambda,
                               std::span<const std::size_t> subset) {
    if (lambda.N() != 2) throw ValidationError("Frechet bounds need a two-marginal coupling");
    const std::size_t M = rho.size();
    std::vector<char> in(M, 0);
    double mass = 0.0;
    for (std::size_t i : subset) {
        if (i >= M) throw ValidationError("subset index out of range");
        if (!in[i]) mass += rho.weight(i);
        in[i] = 1;
    }
    double observed = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            if (in[i] && in[j]) observed += lambda.weight(i * M + j);
        }
    }
    return {std::max(0.0, 2.0 * mass - 1.0), observed, mass};
}

Sandwich<Rational> frechet_check_exact(const DiscreteMeasure& rho, const Coupling& lambda,
                                       std::span<const std::size_t> subset) {
    if (lambda.N() != 2) throw ValidationError("Frechet bounds need a two-marginal coupling");
    const auto& x = lambda.exact_weights();
    const std::size_t M = rho.size();
    std::vector<char> in(M, 0);
    Rational mass = 0;
    for (std::size_t i : subset) {
        if (i >= M) throw ValidationError("subset index out of range");
        if (!in[i]) mass += rho.has_exact_weights() ? rho.exact_weights()[i] : Rational(rho.weight(i));
        in[i] = 1;
    }
    Rational observed = 0;
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            if (in[i] && in[j]) observed += x[i * M + j];
        }
    }
    Rational lower = 2 * mass - 1;
    if (lower < 0) lower = 0;
    return {lower, observed, mass};
}

bool positivity_check(const Measure& rho, const HFunction& h, std::size_t N, ExtReal C_sup) {
    const double t = C_sup.is_infinite() ? 0.0 : h_inv(h, C_sup / pair_count(N));
    return kappa(rho, t) > 1.0 / static_cast<double>(N);
}

bool Verification::holds() const { return main.holds && (!two_marginal || two_marginal->holds); }

Verification verify_main(const DiscreteMeasure& rho, const HFunction& h, std::size_t N,
                         const SolverOptions& opts) {
    const Measure m = rho;
    Verification v;
    v.assumption_a = !h.h0().is_infinite() || pointwise(m) < 1.0 / static_cast<double>(N);
    v.C_integral = solve_integral(rho, h, N, opts).value;
    v.C_sup = solve_supremal(rho, h, N, opts).value;
    v.main = make_bound_report(v.C_integral, v.C_sup, main_bound_formula_N(m, h, N, v.C_sup), "main_N");
    if (N == 2) {
        v.two_marginal = make_bound_report(v.C_integral, v.C_sup, main_bound_2_formula(m, h, v.C_sup), "main_2");
    }
    v.positivity = positivity_check(m, h, N, v.C_sup);
    return v;
}

} // namespace repot
