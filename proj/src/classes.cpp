#include "repot/classes.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "repot/concentration.hpp"
#include "repot/errors.hpp"
#include "repot/quadrature.hpp"

namespace repot {
namespace {

constexpr double kClassTolerance = 1e-9;
constexpr int kGammaMaxIterations = 1000;
constexpr double kGammaEps = 1e-16;

// Σ x^n / (a(a+1)...(a+n)), times x^a e^{-x}.
double gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kGammaMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaEps) break;
    }
    return sum * std::exp(-x + a * std::log(x));
}

// Upper function Γ(a, x) by the Lentz continued fraction.
double gamma_continued_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kGammaMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kGammaEps) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

ClassConstantReport tail_report(double r, double kappa_2r, double delta) {
    ClassConstantReport rep;
    rep.class_name = "tail-control";
    rep.delta = delta;
    rep.witness.r_rho = r;
    rep.witness.kappa_2r = kappa_2r;
    rep.witness.survival_2r = 1.0 - kappa_2r;
    rep.applicable = rep.witness.survival_2r <= delta + kClassTolerance;
    rep.constant = (1.0 - 2.0 * delta) / 4.0;
    return rep;
}

} // namespace

double lower_incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw ValidationError("incomplete gamma needs a > 0");
    if (!(x >= 0.0)) throw ValidationError("incomplete gamma needs x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::tgamma(a);
    if (x < a + 1.0) return gamma_series(a, x);
    return std::tgamma(a) - gamma_continued_fraction(a, x);
}

double gaussian_ball_mass(std::size_t d, double sigma, double t) {
    const double dd = static_cast<double>(d);
    const double coeff = dd * unit_ball_volume(d) / (2.0 * std::pow(std::numbers::pi, dd / 2.0));
    return coeff * lower_incomplete_gamma(dd / 2.0, t * t / (2.0 * sigma * sigma));
}

double c_infty_radial(const RadialCDF& cdf) { return 1.0 / (2.0 * r_rho(cdf, 0.5)); }

double c_infty_radial(const RadialMeasure& rho) { return c_infty_radial(RadialCDF(rho)); }

double integral_cost_radial(const RadialCDF& cdf) {
    if (!cdf.measure().unimodal()) throw NotUnimodal("reflection map requires a unimodal radial measure");
    const double top = cdf.total_mass();
    auto q = [&](double u) {
        if (u <= 0.0) return 0.0;
        return cdf.quantile(std::min(u, top * (1.0 - 1e-15)));
    };
    // u = e^{-s} removes the endpoint singularity at u = 0; the mass beyond
    // s = 34 is below 1e-14 of the total.
    auto integrand = [&](double s) {
        const double u = std::exp(-s);
        return u / (q(u) + q(1.0 - u));
    };
    return 2.0 * adaptive_simpson(integrand, std::numbers::ln2, 34.0, 1e-11);
}

ClassConstantReport unimodal_constant(const RadialMeasure& rho) {
    const RadialCDF cdf(rho);
    const double r = r_rho(cdf, 0.5);
    ClassConstantReport rep;
    rep.class_name = "unimodal-radial";
    rep.witness.r_rho = r;
    rep.witness.kappa_2r = kappa_radial(cdf, 2.0 * r);
    rep.witness.survival_2r = 1.0 - rep.witness.kappa_2r;
    rep.constant = rep.witness.kappa_2r - 0.5;
    rep.applicable = rep.constant > 0.0;
    return rep;
}

ClassConstantReport tail_control_constant(const Measure& rho, double delta) {
    if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("delta must lie in (0, 1/2)");
    if (const auto* d = std::get_if<DiscreteMeasure>(&rho)) {
        const double r = r_rho(*d, 0.5);
        auto rep = tail_report(r, kappa_discrete(*d, 2.0 * r), delta);
        rep.witness.min_weight = d->min_weight();
        return rep;
    }
    const RadialCDF cdf(std::get<RadialMeasure>(rho));
    const double r = r_rho(cdf, 0.5);
    return tail_report(r, kappa_radial(cdf, 2.0 * r), delta);
}

ClassConstantReport log_concave_check(const RadialMeasure& rho) {
    const RadialCDF cdf(rho);
    constexpr std::size_t kGrid = 400;
    const double lo = cdf.quantile(1e-9);
    const double hi = cdf.quantile(std::min(1.0 - 1e-9, cdf.total_mass() * (1.0 - 1e-12)));
    std::vector<double> logf(kGrid);
    double scale = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) {
        const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kGrid - 1);
        const double f = rho.radial_density(s);
        if (!(f > 0.0)) throw NotLogConcave(rho.name() + ": density vanishes inside its support");
        logf[i] = std::log(f);
        scale = std::max(scale, std::abs(logf[i]));
    }
    const double tol = kClassTolerance * (1.0 + scale);
    for (std::size_t i = 1; i + 1 < kGrid; ++i) {
        if (logf[i - 1] + logf[i + 1] > 2.0 * logf[i] + tol) {
            throw NotLogConcave(rho.name() + ": radial density fails the log-concavity test");
        }
    }
    auto rep = tail_control_constant(rho, 0.25);
    rep.class_name = "log-concave";
    return rep;
}

ClassConstantReport discrete_class_constant(const DiscreteMeasure& rho) {
    if (!(rho.max_weight() < 0.5)) throw WeightTooLarge("every atom must carry mass below 1/2");
    ClassConstantReport rep;
    rep.class_name = "discrete";
    rep.delta = rho.min_weight();
    rep.constant = rho.min_weight() / 2.0;
    rep.applicable = true;
    rep.witness.r_rho = r_rho(rho, 0.5);
    rep.witness.kappa_2r = kappa_discrete(rho, 2.0 * rep.witness.r_rho);
    rep.witness.survival_2r = 1.0 - rep.witness.kappa_2r;
    rep.witness.min_weight = rho.min_weight();
    return rep;
}

bool trim_min_mass_check(const DiscreteMeasure& rho, ExtReal C_sup) {
    if (!C_sup.is_finite() || !(C_sup > ExtReal(0.0))) {
        throw ValidationError("trim check needs a finite positive supremal cost");
    }
    return kappa_discrete(rho, 2.0 / C_sup.value()) - 0.5 >= rho.min_weight() - 1e-12;
}

std::string to_json(const ClassConstantReport& report) {
    nlohmann::ordered_json j;
    j["class_name"] = report.class_name;
    j["constant"] = report.constant;
    j["applicable"] = report.applicable;
    if (report.delta) j["delta"] = *report.delta;
    nlohmann::ordered_json w;
    w["r_rho"] = report.witness.r_rho;
    w["kappa_2r"] = report.witness.kappa_2r;
    w["survival_2r"] = report.witness.survival_2r;
    if (report.witness.min_weight) w["min_weight"] = *report.witness.min_weight;
    j["witness"] = w;
    return j.dump(2);
}

} // namespace repot
