#include "repot/driver.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "repot/bounds.hpp"
#include "repot/classes.hpp"
#include "repot/concentration.hpp"
#include "repot/cost.hpp"
#include "repot/errors.hpp"
#include "repot/solvers.hpp"

namespace repot {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string status_of(const std::exception& e) {
    if (dynamic_cast<const InstanceTooLarge*>(&e)) return "instance-too-large";
    if (dynamic_cast<const RejectionBudgetExceeded*>(&e)) return "rejection-budget-exceeded";
    if (dynamic_cast<const AssumptionViolated*>(&e)) return "assumption-violated";
    return "error";
}

Rational exact_fraction(double x) {
    const double inv = 1.0 / x;
    if (std::abs(inv - std::round(inv)) < 1e-12) return Rational(1) / Rational(static_cast<long long>(std::round(inv)));
    return Rational(x);
}

struct Recorder {
    std::vector<ExampleResult> results;

    void close(std::string id, std::string quantity, double expected, double observed, double tol) {
        const bool pass = std::abs(observed - expected) <= tol;
        results.push_back({std::move(id), std::move(quantity), expected, observed, tol, pass});
    }
    void flag(std::string id, std::string quantity, bool ok) {
        results.push_back({std::move(id), std::move(quantity), 1.0, ok ? 1.0 : 0.0, 0.0, ok});
    }
};

void example_1_3(Recorder& rec) {
    const HFunction h = HFunction::power(1.0);
    for (double eps : {0.1, 0.05, 0.01}) {
        const std::string id = "ex-1.3 eps=" + format_real(eps);
        const auto rho = example_rho_eps(eps);
        SolverOptions exact;
        exact.rational = true;
        const auto integral = solve_integral(rho, h, 2, exact);
        const auto sup = solve_supremal(rho, h, 2, exact);
        rec.close(id, "C", 2.0 * eps * (1.5 - eps), integral.value.value(), 1e-9);
        rec.close(id, "C_inf", 1.0, sup.value.value(), 0.0);
        const Measure m = rho;
        const double b_main = main_bound_formula_N(m, h, 2, sup.value).value();
        const double b_two = main_bound_2_formula(m, h, sup.value).value();
        rec.close(id, "bound_main", eps / 4.0, b_main, 1e-12);
        rec.close(id, "bound_2", eps / 2.0, b_two, 1e-12);
        rec.flag(id, "C >= bound_2", integral.value.value() >= b_two);
    }
}

void derangement(Recorder& rec) {
    const std::size_t N = 3;
    const double p = 0.5;
    const auto rho = derangement_measure(N, p, 10.0);
    const double alpha = 1.0;
    const double nn = static_cast<double>(N);
    const std::string id = "derangement N=3 p=0.5";
    rec.close(id, "kappa(alpha)", p, kappa_discrete(rho, alpha), 1e-15);
    rec.close(id, "min_bad_mass", (nn * p - 1.0) / (nn - 1.0), min_bad_mass(rho, N, 2.0 * alpha), 1e-9);
    rec.close(id, "diagonal bound", (nn * p - 1.0) / (nn * (nn - 1.0)), m_frak(Measure(rho), alpha, N), 1e-12);

    // Reference plan: identity and both 3-cycles at (1-p)/(N-1), the diagonal at (Np-1)/(N-1).
    const TupleIndexer idx(N, N);
    std::vector<double> w(idx.cells(), 0.0);
    const std::size_t perms[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const auto& perm : perms) w[idx.encode(perm)] += (1.0 - p) / (nn - 1.0);
    const std::size_t diag[3] = {0, 0, 0};
    w[idx.encode(diag)] += (nn * p - 1.0) / (nn - 1.0);
    const Coupling plan(rho.points(), N, w);
    rec.close(id, "plan marginal error", 0.0, plan.max_marginal_error(rho), 1e-15);
    rec.close(id, "plan bad mass", (nn * p - 1.0) / (nn - 1.0), bad_mass(plan, 2.0 * alpha), 1e-15);
}

void shifted_uniform(Recorder& rec) {
    const std::size_t M = 40;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < M; ++i) pts.push_back(Point{-1.0 + (2.0 * i + 1.0) / M});
    const DiscreteMeasure rho(pts, std::vector<double>(M, 1.0 / M));
    std::vector<double> w(M * M, 0.0);
    for (std::size_t i = 0; i < M; ++i) w[i * M + (i + M / 2) % M] = 1.0 / M;
    const Coupling plan(rho.points(), 2, w);
    const RadialMeasure uniform(1, UniformProfile{1.0});
    const std::string id = "shifted-uniform";
    rec.close(id, "plan marginal error", 0.0, plan.max_marginal_error(rho), 1e-15);
    for (double alpha : {0.25, 0.75}) {
        const std::string a = " alpha=" + format_real(alpha);
        rec.close(id, "plan bad mass" + a, alpha < 0.5 ? 0.0 : 1.0, bad_mass(plan, 2.0 * alpha), 1e-12);
        rec.close(id, "2kappa-1" + a, 2.0 * alpha - 1.0, 2.0 * kappa_radial(uniform, alpha) - 1.0, 1e-9);
    }
    rec.close(id, "C_inf (uniform)", 1.0, c_infty_radial(uniform), 1e-9);
}

void three_bump(Recorder& rec) {
    const double delta = 0.1;
    {
        // Bumps collapsed to atoms at 0, 1, 2.
        const DiscreteMeasure rho({Point{0.0}, Point{1.0}, Point{2.0}},
                                  std::vector<Rational>(3, Rational(1, 3)));
        const double beta = 1.0 + delta;
        std::vector<double> w(9, 0.0);
        w[0 * 3 + 1] = w[1 * 3 + 2] = w[2 * 3 + 0] = 1.0 / 3.0;
        const Coupling plan(rho.points(), 2, w);
        const std::string id = "three-bump 2alpha=1.1";
        rec.close(id, "cyclic plan bad mass", 2.0 / 3.0, bad_mass(plan, beta), 1e-15);
        rec.close(id, "min_bad_mass", 1.0 / 3.0, min_bad_mass(rho, 2, beta), 1e-9);
        rec.close(id, "2kappa-1", 1.0 / 3.0, 2.0 * kappa_discrete(rho, beta / 2.0) - 1.0, 1e-15);
    }
    {
        const auto rho = three_bump_measure(delta, 10);
        const auto sup = solve_supremal(rho, HFunction::power(1.0), 2);
        const std::string id = "three-bump non-unimodal";
        rec.close(id, "C_inf", 2.0 / (2.0 + delta), sup.value.value(), 1e-9);
        rec.flag(id, "C_inf >= 1/(2 r_rho)", sup.value.value() >= 1.0 / (2.0 * r_rho(rho, 0.5)) - 1e-9);
    }
}

void gaussian(Recorder& rec) {
    for (double sigma : {0.5, 1.0, 2.0}) {
        const RadialMeasure rho(2, GaussianProfile{sigma});
        rec.close("gaussian-d2 sigma=" + format_real(sigma), "C_inf",
                  1.0 / (2.0 * sigma * std::sqrt(2.0 * std::numbers::ln2)), c_infty_radial(rho), 1e-8);
    }
    for (double sigma : {0.5, 1.0, 2.0, 10.0}) {
        const std::string id = "gaussian-d2 sigma=" + format_real(sigma);
        const auto rep = unimodal_constant(RadialMeasure(2, GaussianProfile{sigma}));
        rec.close(id, "kappa(2r)-1/2", 7.0 / 16.0, rep.constant, 1e-10);
        rec.close(id, "kappa(2r) vs gamma kernel", gaussian_ball_mass(2, sigma, 2.0 * rep.witness.r_rho),
                  rep.witness.kappa_2r, 1e-10);
    }
}

void student_t(Recorder& rec) {
    const RadialMeasure rho(1, CauchyProfile{1.0});
    const auto rep = tail_control_constant(rho, 0.25);
    const std::string id = "student-t nu=1";
    rec.close(id, "S(2r)", 1.0 - 2.0 * std::atan(2.0) / std::numbers::pi, rep.witness.survival_2r, 1e-8);
    rec.flag(id, "tail control delta=1/4 inapplicable", !rep.applicable);
}

void laplace(Recorder& rec) {
    const RadialMeasure rho(1, ExpGProfile{{0.0, 60.0}, {0.0, 60.0}});
    const auto rep = log_concave_check(rho);
    const std::string id = "laplace d=1";
    rec.close(id, "S(2r)", 0.25, rep.witness.survival_2r, 1e-8);
    rec.close(id, "constant", 0.125, rep.constant, 0.0);
    const RadialCDF cdf(rho);
    const double C = integral_cost_radial(cdf);
    const double C_inf = c_infty_radial(cdf);
    rec.flag(id, "C >= C_inf/4", C >= C_inf / 4.0);
}

void discrete_class(Recorder& rec) {
    const DiscreteMeasure rho({Point{0.0}, Point{1.0}, Point{2.0}}, std::vector<double>{0.4, 0.35, 0.25});
    const auto rep = discrete_class_constant(rho);
    const HFunction h = HFunction::power(1.0);
    const double C = solve_integral(rho, h, 2).value.value();
    const auto sup = solve_supremal(rho, h, 2).value;
    const std::string id = "discrete-class";
    rec.close(id, "constant", 0.125, rep.constant, 1e-15);
    rec.flag(id, "C >= constant * C_inf", C >= rep.constant * sup.value() - 1e-9);
    rec.flag(id, "trim min-mass check", trim_min_mass_check(rho, sup));
}

} // namespace

// ---------------------------------------------------------------- Rng

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
                      static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state))};
    engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential() { return -std::log1p(-uniform()); }

std::size_t Rng::below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

// ---------------------------------------------------------------- instances

DiscreteMeasure gen_instance(const RunConfig& cfg, const Cell& cell, std::uint64_t instance_index) {
    if (cell.M < 2) throw ValidationError("instances need at least two atoms");
    if (cell.d < 1) throw ValidationError("dimension must be positive");
    Rng rng(cfg.seed, instance_index);

    std::vector<Point> pts;
    std::size_t attempts = 0;
    while (pts.size() < cell.M) {
        if (++attempts > cfg.rejection_budget) throw RejectionBudgetExceeded("could not separate atoms");
        std::vector<double> x(cell.d);
        for (double& v : x) v = rng.uniform();
        Point p(std::move(x));
        const bool ok = std::all_of(pts.begin(), pts.end(),
                                    [&](const Point& q) { return distance(p, q) >= cfg.min_separation; });
        if (ok) pts.push_back(std::move(p));
    }

    const double cap = 1.0 / static_cast<double>(cell.N);
    for (std::size_t draw = 0; draw < cfg.rejection_budget; ++draw) {
        std::vector<double> w(cell.M);
        double total = 0.0;
        for (double& v : w) total += (v = rng.exponential());
        for (double& v : w) v /= total;
        if (cfg.condition_kappa && !(*std::max_element(w.begin(), w.end()) < cap)) continue;
        return DiscreteMeasure(std::move(pts), std::move(w));
    }
    throw RejectionBudgetExceeded("no weight draw with every atom below 1/N");
}

SweepSummary run_sweep(const RunConfig& cfg, std::ostream& csv) {
    csv << "instance_id,N,M,d,h,C_integral,C_sup,bound_main,bound_2,positivity,holds,slack,status\n";
    SweepSummary summary;
    const HFunction h = HFunction::parse(cfg.h);
    SolverOptions opts;
    opts.rational = cfg.rational;
    std::uint64_t index = 0;
    for (const Cell& cell : cfg.cells) {
        for (std::size_t k = 0; k < cell.count; ++k, ++index) {
            csv << index << ',' << cell.N << ',' << cell.M << ',' << cell.d << ',' << h.name() << ',';
            ++summary.rows;
            try {
                const auto rho = gen_instance(cfg, cell, index);
                const auto v = verify_main(rho, h, cell.N, opts);
                const bool holds = v.holds() && v.positivity;
                csv << v.C_integral << ',' << v.C_sup << ',' << v.main.bound_value << ',';
                if (v.two_marginal) csv << v.two_marginal->bound_value;
                csv << ',' << (v.positivity ? "true" : "false") << ',' << (holds ? "true" : "false") << ','
                    << v.main.slack << ",ok\n";
                if (!holds) ++summary.failures;
            } catch (const std::exception& e) {
                csv << ",,,,,,," << status_of(e) << '\n';
                ++summary.errors;
            }
        }
    }
    return summary;
}

// ---------------------------------------------------------------- examples

DiscreteMeasure example_rho_eps(double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw ValidationError("eps must lie in (0, 1/2)");
    const Rational e = exact_fraction(eps);
    const Rational half(1, 2);
    return DiscreteMeasure({Point{0.0}, Point{1.0}, Point{1.0 / eps}}, std::vector<Rational>{half, e, half - e});
}

DiscreteMeasure derangement_measure(std::size_t N, double p, double spacing) {
    std::vector<Point> pts;
    std::vector<double> w;
    for (std::size_t i = 0; i < N; ++i) {
        pts.push_back(Point{spacing * static_cast<double>(i)});
        w.push_back(i == 0 ? p : (1.0 - p) / static_cast<double>(N - 1));
    }
    return DiscreteMeasure(std::move(pts), std::move(w));
}

DiscreteMeasure three_bump_measure(double delta, std::size_t atoms_per_bump) {
    std::vector<Point> pts;
    const double n = static_cast<double>(atoms_per_bump);
    for (int bump = 0; bump < 3; ++bump) {
        for (std::size_t k = 0; k < atoms_per_bump; ++k) {
            pts.push_back(Point{bump + delta * (static_cast<double>(k) + 0.5) / n});
        }
    }
    const Rational w(1, static_cast<long long>(3 * atoms_per_bump));
    return DiscreteMeasure(std::move(pts), std::vector<Rational>(pts.size(), w));
}

std::vector<ExampleResult> run_paper_examples() {
    Recorder rec;
    example_1_3(rec);
    derangement(rec);
    shifted_uniform(rec);
    three_bump(rec);
    gaussian(rec);
    student_t(rec);
    laplace(rec);
    discrete_class(rec);
    return rec.results;
}

void print_examples(const std::vector<ExampleResult>& results, std::ostream& out) {
    std::size_t id_w = 2;
    std::size_t q_w = 8;
    for (const auto& r : results) {
        id_w = std::max(id_w, r.id.size());
        q_w = std::max(q_w, r.quantity.size());
    }
    out << std::left << std::setw(static_cast<int>(id_w)) << "id" << "  " << std::setw(static_cast<int>(q_w))
        << "quantity" << "  " << std::setw(22) << "expected" << std::setw(22) << "observed" << std::setw(10)
        << "tol" << "result\n";
    for (const auto& r : results) {
        out << std::setw(static_cast<int>(id_w)) << r.id << "  " << std::setw(static_cast<int>(q_w)) << r.quantity
            << "  " << std::setw(22) << format_real(r.expected) << std::setw(22) << format_real(r.observed)
            << std::setw(10) << format_real(r.tolerance) << (r.pass ? "PASS" : "FAIL") << '\n';
    }
}

} // namespace repot
