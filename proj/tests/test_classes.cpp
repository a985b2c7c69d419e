#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "repot/classes.hpp"
#include "repot/concentration.hpp"
#include "repot/errors.hpp"
#include "repot/solvers.hpp"

using namespace repot;

TEST_CASE("lower incomplete gamma") {
    CHECK(lower_incomplete_gamma(1.0, 1.0) == doctest::Approx(0.632120558829).epsilon(1e-12));
    CHECK(lower_incomplete_gamma(2.5, 0.0) == 0.0);
    CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), ValidationError);
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> ua(0.1, 12.0);
    std::uniform_real_distribution<double> ux(0.0, 30.0);
    for (int i = 0; i < 500; ++i) {
        const double a = ua(gen);
        const double x = ux(gen);
        CHECK(lower_incomplete_gamma(a, x) == doctest::Approx(boost::math::tgamma_lower(a, x)).epsilon(1e-12));
    }
}

TEST_CASE("gamma kernel reproduces the d = 2 Gaussian ball mass") {
    std::mt19937_64 gen(43);
    std::uniform_real_distribution<double> u(0.05, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double t = u(gen);
        const double sigma = u(gen);
        CHECK(std::abs(gaussian_ball_mass(2, sigma, t) - (1.0 - std::exp(-t * t / (2 * sigma * sigma)))) <= 1e-10);
    }
    for (std::size_t d : {1, 3, 4}) {
        const RadialMeasure rho(d, GaussianProfile{1.2});
        for (double t : {0.3, 1.0, 2.5}) {
            CHECK(std::abs(gaussian_ball_mass(d, 1.2, t) - kappa_radial(rho, t)) <= 1e-10);
        }
    }
}

TEST_CASE("supremal cost of radial measures") {
    for (double sigma : {0.5, 1.0, 2.0}) {
        CHECK(c_infty_radial(RadialMeasure(2, GaussianProfile{sigma})) ==
              doctest::Approx(1.0 / (2.0 * sigma * std::sqrt(2.0 * std::numbers::ln2))).epsilon(1e-10));
    }
    CHECK(c_infty_radial(RadialMeasure(1, UniformProfile{1.0})) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c_infty_radial(RadialMeasure(1, CauchyProfile{1.0})) == doctest::Approx(0.5).epsilon(1e-10));
    const RadialMeasure bumpy(1, ExpGProfile{{0.0, 1.0, 2.0, 3.0}, {1.0, 0.0, 1.0, 5.0}});
    CHECK_THROWS_AS(c_infty_radial(bumpy), NotUnimodal);
}

TEST_CASE("integral cost of the reflection map") {
    // Uniform on [-1, 1]: F⁻¹(u) = u, so the integrand is constant 1.
    CHECK(integral_cost_radial(RadialCDF(RadialMeasure(1, UniformProfile{1.0}))) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // Never above the supremal cost.
    for (const RadialMeasure& rho : {RadialMeasure(1, GaussianProfile{1.0}), RadialMeasure(2, GaussianProfile{1.0}),
                                     RadialMeasure(1, CauchyProfile{1.0})}) {
        const RadialCDF cdf(rho);
        CHECK(integral_cost_radial(cdf) <= c_infty_radial(cdf) + 1e-12);
    }
}

TEST_CASE("unimodal constant") {
    double first = 0.0;
    for (double sigma : {0.5, 1.0, 2.0, 10.0}) {
        const auto rep = unimodal_constant(RadialMeasure(2, GaussianProfile{sigma}));
        CHECK(rep.class_name == "unimodal-radial");
        CHECK(rep.applicable);
        CHECK(std::abs(rep.constant - 7.0 / 16.0) <= 1e-10);
        CHECK(std::abs(rep.witness.kappa_2r - 15.0 / 16.0) <= 1e-10);
        if (sigma == 0.5) first = rep.constant;
        CHECK(std::abs(rep.constant - first) <= 1e-10);
    }
    CHECK(unimodal_constant(RadialMeasure(1, UniformProfile{1.0})).constant == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(unimodal_constant(RadialMeasure(1, CauchyProfile{1.0})).constant ==
          doctest::Approx(2.0 * std::atan(2.0) / std::numbers::pi - 0.5).epsilon(1e-9));
}

TEST_CASE("tail control") {
    const auto g = tail_control_constant(RadialMeasure(1, GaussianProfile{1.0}), 0.25);
    CHECK(g.applicable);
    CHECK(g.constant == 0.125);
    CHECK(g.witness.r_rho == doctest::Approx(0.6744897501960817).epsilon(1e-9));
    CHECK(g.witness.survival_2r == doctest::Approx(std::erfc(2.0 * 0.6744897501960817 / std::numbers::sqrt2)).epsilon(1e-9));
    const auto c = tail_control_constant(RadialMeasure(1, CauchyProfile{1.0}), 0.25);
    CHECK_FALSE(c.applicable);
    CHECK(c.witness.survival_2r == doctest::Approx(0.29516723530086664).epsilon(1e-9));
    CHECK(tail_control_constant(RadialMeasure(1, GaussianProfile{1.0}), 0.4999999).constant < 1e-7);
    CHECK_THROWS_AS(tail_control_constant(RadialMeasure(1, GaussianProfile{1.0}), 0.5), ValidationError);
    const Measure d = DiscreteMeasure({Point{0.0}, Point{1.0}, Point{10.0}}, std::vector<double>{0.5, 0.1, 0.4});
    const auto dr = tail_control_constant(d, 0.45);
    CHECK(dr.witness.r_rho == doctest::Approx(0.5));
    CHECK(dr.witness.survival_2r == doctest::Approx(0.4));
    CHECK(dr.applicable);
}

TEST_CASE("log-concave profiles") {
    for (std::size_t d : {1, 2, 3}) {
        const auto rep = log_concave_check(RadialMeasure(d, GaussianProfile{1.7}));
        CHECK(rep.class_name == "log-concave");
        CHECK(rep.witness.survival_2r <= 0.25);
        CHECK(rep.applicable);
        CHECK(rep.constant == 0.125);
    }
    const auto lap = log_concave_check(RadialMeasure(1, ExpGProfile{{0.0, 60.0}, {0.0, 60.0}}));
    CHECK(lap.witness.survival_2r == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(lap.witness.r_rho == doctest::Approx(std::numbers::ln2).epsilon(1e-9));
    CHECK_THROWS_AS(log_concave_check(RadialMeasure(1, CauchyProfile{1.0})), NotLogConcave);
}

TEST_CASE("discrete class constant") {
    const DiscreteMeasure rho({Point{0.0}, Point{1.0}, Point{2.0}}, std::vector<double>{0.4, 0.35, 0.25});
    const auto rep = discrete_class_constant(rho);
    CHECK(rep.constant == 0.125);
    CHECK(*rep.delta == 0.25);
    CHECK(rep.applicable);
    const DiscreteMeasure half({Point{0.0}, Point{1.0}}, std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(discrete_class_constant(half), WeightTooLarge);
}

TEST_CASE("trim min-mass check") {
    const DiscreteMeasure rho({Point{0.0}, Point{1.0}, Point{10.0}}, std::vector<double>{0.5, 0.1, 0.4});
    CHECK(trim_min_mass_check(rho, 1.0));
    const DiscreteMeasure two({Point{0.0}, Point{1.0}}, std::vector<double>{0.5, 0.5});
    CHECK(trim_min_mass_check(two, 1.0));
    CHECK_THROWS_AS(trim_min_mass_check(two, ExtReal::infinity()), ValidationError);
}

TEST_CASE("discrete class inequality fails on a three-atom measure") {
    // Atoms 0 and 1 carry 0.275 each, a far atom at 100 carries 0.45. The
    // claimed C >= (δ/2) C∞ would need C >= 0.1375.
    const DiscreteMeasure rho({Point{0.0}, Point{1.0}, Point{100.0}}, std::vector<double>{0.275, 0.275, 0.45});
    const auto h = HFunction::power(1.0);
    const double C = solve_integral(rho, h, 2).value.value();
    const double C_sup = solve_supremal(rho, h, 2).value.value();
    const auto rep = discrete_class_constant(rho);
    CHECK(C_sup == 1.0);
    CHECK(C == doctest::Approx(0.10904545454545454).epsilon(1e-9));
    CHECK(C < rep.constant * C_sup);
}

TEST_CASE("supremal cost of the three-bump measure") {
    // The lemma's lower bound 1/(2α) with α = (2+δ)/4 is attained.
    const double delta = 0.1;
    std::vector<Point> pts;
    for (int b = 0; b < 3; ++b) {
        for (int k = 0; k < 10; ++k) pts.push_back(Point{b + delta * (k + 0.5) / 10.0});
    }
    const DiscreteMeasure rho(pts, std::vector<double>(30, 1.0 / 30.0));
    const double C_sup = solve_supremal(rho, HFunction::power(1.0), 2).value.value();
    CHECK(C_sup == doctest::Approx(2.0 / (2.0 + delta)).epsilon(1e-12));
    CHECK(C_sup < 1.0);
    CHECK(C_sup >= 1.0 / (2.0 * r_rho(rho, 0.5)) - 1e-9);
}
