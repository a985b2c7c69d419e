// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "repot/bounds.hpp"
#include "repot/classes.hpp"
#include "repot/concentration.hpp"
#include "repot/cost.hpp"
#include "repot/driver.hpp"
#include "repot/solvers.hpp"

using namespace repot;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
};

const HFunction coulomb = HFunction::power(1.0);

// Radii strictly between consecutive breakpoints of κ, so that the closed
// and open concentration functions agree there.
std::vector<double> alpha_samples(const DiscreteMeasure& rho, std::size_t count) {
    const auto profile = concentration_profile(rho);
    const auto& b = profile.breakpoints();
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) mids.push_back(0.5 * (b[i] + b[i + 1]));
    mids.push_back(1.5 * b.back() + 1e-3);
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(mids[k * mids.size() / count]);
    }
    return out;
}

std::vector<Cell> sweep_cells() {
    std::vector<Cell> cells;
    for (std::size_t M = 3; M <= 6; ++M) {
        for (std::size_t d = 1; d <= 2; ++d) cells.push_back({2, M, d, 25});
    }
    cells.push_back({3, 4, 1, 13});
    cells.push_back({3, 4, 2, 13});
    cells.push_back({3, 5, 1, 12});
    cells.push_back({3, 5, 2, 12});
    return cells;
}

struct SweepInstance {
    Cell cell;
    DiscreteMeasure rho;
};

std::vector<SweepInstance> sweep_instances() {
    RunConfig cfg;
    cfg.seed = 42;
    std::vector<SweepInstance> out;
    std::uint64_t index = 0;
    for (const Cell& cell : sweep_cells()) {
        for (std::size_t k = 0; k < cell.count; ++k) out.push_back({cell, gen_instance(cfg, cell, index++)});
    }
    return out;
}

Outcome criterion_1() {
    Outcome o;
    const auto t0 = Clock::now();
    SolverOptions exact;
    exact.rational = true;
    for (double eps : {0.1, 0.05, 0.01}) {
        const auto rho = example_rho_eps(eps);
        const double C = solve_integral(rho, coulomb, 2, exact).value.value();
        const ExtReal C_sup = solve_supremal(rho, coulomb, 2, exact).value;
        const double expected = 2.0 * eps * (1.5 - eps);
        const bool ok = std::abs(C - expected) <= 1e-9 && C_sup == ExtReal(1.0);
        o.pass = o.pass && ok;
        o.detail << "eps=" << eps << " C=" << format_real(C) << " C_inf=" << C_sup << "; ";
    }
    const double elapsed = seconds_since(t0);
    o.pass = o.pass && elapsed < 1.0;
    o.detail << "time " << elapsed << " s";
    return o;
}

Outcome criterion_2(const std::vector<SweepInstance>& instances) {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t checks = 0;
    std::size_t violations = 0;
    double worst = 1e300;
    for (const auto& inst : instances) {
        const std::size_t N = inst.cell.N;
        const double n = static_cast<double>(N);
        for (double alpha : alpha_samples(inst.rho, 5)) {
            const double k = kappa_discrete(inst.rho, alpha);
            const double bad = min_bad_mass(inst.rho, N, 2.0 * alpha);
            double bound = (n * k - 1.0) / (n * (n - 1.0));
            if (N == 2) bound = std::max(bound, 2.0 * k - 1.0);
            worst = std::min(worst, bad - bound);
            ++checks;
            if (bad < bound - 1e-9) ++violations;
        }
    }
    const double elapsed = seconds_since(t0);
    o.pass = violations == 0 && elapsed < 300.0;
    o.detail << instances.size() << " instances, " << checks << " (instance, alpha) checks, " << violations
             << " violations, min slack " << format_real(worst) << ", time " << elapsed << " s";
    return o;
}

Outcome criterion_3(const std::vector<SweepInstance>& instances) {
    Outcome o;
    std::size_t failures = 0;
    std::size_t positivity_failures = 0;
    std::size_t assumption = 0;
    double worst = 1e300;
    for (const auto& inst : instances) {
        const auto v = verify_main(inst.rho, coulomb, inst.cell.N);
        if (!v.holds()) ++failures;
        if (!v.positivity) ++positivity_failures;
        if (v.assumption_a) ++assumption;
        worst = std::min(worst, v.main.slack.value());
        if (v.two_marginal) worst = std::min(worst, v.two_marginal->slack.value());
    }
    o.pass = failures == 0 && positivity_failures == 0 && assumption == instances.size();
    o.detail << instances.size() << " instances (all satisfy the h(0)=inf mass condition: "
             << (assumption == instances.size() ? "yes" : "no") << "), bound failures " << failures
             << ", positivity failures " << positivity_failures << ", min slack " << format_real(worst);
    return o;
}

Outcome criterion_4() {
    Outcome o;
    const auto rho = derangement_measure(3, 0.5, 10.0);
    const double bad = min_bad_mass(rho, 3, 2.0);
    const double proven = (3 * 0.5 - 1.0) / 6.0;
    o.pass = std::abs(bad - 0.25) <= 1e-9 && bad > proven;
    o.detail << "min_bad_mass=" << format_real(bad) << " vs 0.25, proven bound " << format_real(proven);
    return o;
}

Outcome criterion_5() {
    Outcome o;
    Rng rng(2025, 0);
    SolverOptions exact;
    exact.rational = true;
    std::size_t triples = 0;
    std::size_t violations = 0;
    while (triples < 1000) {
        const std::size_t M = 2 + rng.below(5);
        std::vector<Rational> w;
        Rational total = 0;
        std::vector<Point> pts;
        for (std::size_t i = 0; i < M; ++i) {
            w.emplace_back(static_cast<long long>(1 + rng.below(20)));
            total += w.back();
            pts.push_back(Point{static_cast<double>(i), rng.uniform()});
        }
        for (auto& x : w) x /= total;
        const DiscreteMeasure rho(pts, w);
        // A random linear objective makes the optimum a random vertex.
        std::vector<ExtReal> cost(M * M);
        for (auto& c : cost) c = static_cast<double>(rng.below(1000));
        const auto lam = solve_linear(rho, 2, cost, exact).coupling.value();
        for (int s = 0; s < 10 && triples < 1000; ++s, ++triples) {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < M; ++i) {
                if (rng.below(2)) subset.push_back(i);
            }
            if (!frechet_check_exact(rho, lam, subset).holds()) ++violations;
        }
    }
    o.pass = violations == 0;
    o.detail << triples << " exact (instance, vertex coupling, subset) triples, " << violations << " violations";
    return o;
}

DiscreteMeasure discretized_normal(std::size_t M) {
    const RadialCDF cdf(RadialMeasure(1, GaussianProfile{1.0}));
    std::vector<Point> pts;
    for (std::size_t k = 0; k < M; ++k) {
        const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(M);
        const double p = std::abs(2.0 * u - 1.0);
        const double r = cdf.quantile(p);
        pts.push_back(Point{u < 0.5 ? -r : r});
    }
    return DiscreteMeasure(pts, std::vector<double>(M, 1.0 / static_cast<double>(M)));
}

Outcome criterion_6() {
    Outcome o;
    double worst = 0.0;
    for (double sigma : {0.5, 1.0, 2.0}) {
        const double expected = 1.0 / (2.0 * sigma * std::sqrt(2.0 * std::numbers::ln2));
        worst = std::max(worst, std::abs(c_infty_radial(RadialMeasure(2, GaussianProfile{sigma})) - expected));
    }
    o.pass = worst <= 1e-8;
    o.detail << "gaussian d=2 max error " << format_real(worst) << "; ";
    const double target = c_infty_radial(RadialMeasure(1, GaussianProfile{1.0}));
    std::vector<double> errors;
    for (std::size_t M : {20, 40, 80}) {
        const double C_sup = solve_supremal(discretized_normal(M), coulomb, 2).value.value();
        errors.push_back(std::abs(C_sup - target));
        o.detail << "M=" << M << " C_inf=" << format_real(C_sup) << " ";
    }
    for (std::size_t i = 1; i < errors.size(); ++i) o.pass = o.pass && errors[i] <= 1.2 * errors[i - 1];
    o.detail << "target " << format_real(target) << ", errors";
    for (double e : errors) o.detail << ' ' << format_real(e);
    return o;
}

Outcome criterion_7() {
    Outcome o;
    double lo = 1e300;
    double hi = -1e300;
    double worst = 0.0;
    double kernel = 0.0;
    for (double sigma : {0.5, 1.0, 2.0, 10.0}) {
        const auto rep = unimodal_constant(RadialMeasure(2, GaussianProfile{sigma}));
        lo = std::min(lo, rep.constant);
        hi = std::max(hi, rep.constant);
        worst = std::max(worst, std::abs(rep.constant - 7.0 / 16.0));
        kernel = std::max(kernel, std::abs(gaussian_ball_mass(2, sigma, 2.0 * rep.witness.r_rho) - 15.0 / 16.0));
        kernel = std::max(kernel, std::abs(rep.witness.kappa_2r - 15.0 / 16.0));
    }
    o.pass = worst <= 1e-10 && hi - lo <= 1e-10 && kernel <= 1e-10;
    o.detail << "constant 7/16 within " << format_real(worst) << ", spread over sigma " << format_real(hi - lo)
             << ", kappa(2r)=15/16 via gamma kernel within " << format_real(kernel)
             << " (15/32 is not reproduced, see README)";
    return o;
}

Outcome criterion_8() {
    Outcome o;
    const double closed = 1.0 - 2.0 / std::numbers::pi * std::atan(2.0);
    const auto rep = tail_control_constant(RadialMeasure(1, CauchyProfile{1.0}), 0.25);
    o.pass = std::abs(closed - 0.29516723530086664) <= 1e-9 && closed > 0.25 &&
             std::abs(rep.witness.survival_2r - closed) <= 1e-9 && !rep.applicable;
    o.detail << "1-(2/pi)atan(2)=" << format_real(closed) << ", quadrature " << format_real(rep.witness.survival_2r)
             << ", tail control delta=1/4 " << (rep.applicable ? "applicable" : "inapplicable");
    return o;
}

Outcome criterion_9() {
    Outcome o;
    RunConfig cfg;
    cfg.seed = 4242;
    std::size_t inequality_failures = 0;
    std::size_t trim_failures = 0;
    std::size_t count = 0;
    double worst = 1e300;
    std::string first_failure;
    for (std::size_t M = 3; M <= 6; ++M) {
        for (std::size_t d = 1; d <= 2; ++d) {
            const Cell cell{2, M, d, 0};
            for (std::size_t k = 0; k < 12 + (M + d) % 2 && count < 100; ++k, ++count) {
                const auto rho = gen_instance(cfg, cell, count);
                const auto rep = discrete_class_constant(rho);
                const double C = solve_integral(rho, coulomb, 2).value.value();
                const ExtReal C_sup = solve_supremal(rho, coulomb, 2).value;
                const double slack = C - rep.constant * C_sup.value();
                worst = std::min(worst, slack);
                if (slack < -1e-9) {
                    if (first_failure.empty()) first_failure = serialize(rho);
                    ++inequality_failures;
                }
                if (!trim_min_mass_check(rho, C_sup)) ++trim_failures;
            }
        }
    }
    o.pass = inequality_failures == 0 && trim_failures == 0;
    o.detail << count << " instances, inequality failures " << inequality_failures << " (min slack "
             << format_real(worst) << "), trim check failures " << trim_failures;
    if (!first_failure.empty()) o.detail << "; first failing instance " << first_failure;
    return o;
}

Outcome criterion_10() {
    Outcome o;
    Rng rng(10, 0);
    const std::vector<HFunction> hs{HFunction::power(1.0), HFunction::power(2.0), HFunction::expdecay(),
                                    HFunction::tabulated({0.0, 1.0, 2.0, 4.0}, {8.0, 3.0, 1.0, 0.1})};
    std::size_t violations = 0;
    std::size_t configs = 0;
    for (; configs < 10000; ++configs) {
        const std::size_t N = 2 + rng.below(3);
        const std::size_t d = 1 + rng.below(3);
        std::vector<Point> pts;
        for (std::size_t i = 0; i < N; ++i) {
            std::vector<double> x(d);
            for (double& v : x) v = 2.0 * rng.uniform();
            pts.emplace_back(x);
        }
        // Occasional coincident points exercise h(0).
        if (rng.below(20) == 0) pts[1] = pts[0];
        const Configuration cfg(pts);
        const double beta = 0.01 + 3.5 * rng.uniform();
        const double pairs = static_cast<double>(N * (N - 1)) / 2.0;
        for (const auto& h : hs) {
            const ExtReal hb = h.eval(beta);
            if (in_B_beta(cfg, beta) && !in_B_upper(h, cfg, hb)) ++violations;
            if (in_B_upper(h, cfg, hb * ExtReal(pairs)) && !in_B_beta(cfg, beta)) ++violations;
            double t1 = 5.0 * rng.uniform() + 1e-6;
            double t2 = 5.0 * rng.uniform() + 1e-6;
            if (t1 > t2) std::swap(t1, t2);
            if (psi(h, t1) > psi(h, t2)) ++violations;
        }
    }
    o.pass = violations == 0;
    o.detail << configs << " configurations x " << hs.size() << " costs, " << violations << " violations";
    return o;
}

} // namespace

int main() {
    const auto instances = sweep_instances();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"example 1.3 costs", criterion_1},
        {"diagonal lower bound", [&] { return criterion_2(instances); }},
        {"main theorems and positivity", [&] { return criterion_3(instances); }},
        {"derangement example", criterion_4},
        {"Frechet bounds", criterion_5},
        {"radial characterization", criterion_6},
        {"gaussian class constant", criterion_7},
        {"student-t boundary", criterion_8},
        {"discrete class theorem", criterion_9},
        {"cost-set inclusions and psi", criterion_10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.pass) ++failed;
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << ": "
                  << o.detail.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
