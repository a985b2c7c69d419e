#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "repot/cost.hpp"
#include "repot/errors.hpp"

using namespace repot;

TEST_CASE("power cost") {
    const auto h = HFunction::power(1.0);
    CHECK(h.eval(2.0) == ExtReal(0.5));
    CHECK(h.eval(0.0).is_infinite());
    CHECK(h_inv(h, 0.5) == doctest::Approx(2.0));
    CHECK(h_inv(h, ExtReal::infinity()) == 0.0);
    CHECK(psi(h, 1.0).value() == doctest::Approx(0.5));
    CHECK(psi(HFunction::power(2.0), 1.0).value() == doctest::Approx(0.25));
    CHECK(h.name() == "power:1");
}

TEST_CASE("exponential decay cost") {
    const auto h = HFunction::expdecay();
    CHECK(h.eval(0.0) == ExtReal(1.0));
    CHECK(h_inv(h, 2.0) == 0.0);
    CHECK(h_inv(h, 1.0) == 0.0);
    CHECK(psi(h, 0.25).value() == doctest::Approx(0.0625));
    // s >= h(0) maps to t = 0, so ψ(s) = h(0).
    CHECK(psi(h, 3.0) == ExtReal(1.0));
}

TEST_CASE("tabulated cost") {
    const auto h = HFunction::tabulated({0.0, 1.0, 2.0}, {4.0, 2.0, 1.0});
    CHECK(h.h0() == ExtReal(4.0));
    CHECK(h.eval(0.5).value() == doctest::Approx(3.0));
    CHECK(h.eval(10.0).value() == doctest::Approx(1.0));
    CHECK(h_inv(h, 3.0) == doctest::Approx(0.5));
    CHECK(h_inv(h, 1.5) == doctest::Approx(1.5));
    CHECK(std::isinf(h_inv(h, 0.5)));
    CHECK_THROWS_AS(HFunction::tabulated({0.0, 1.0}, {1.0, 2.0}), ValidationError);
    CHECK_THROWS_AS(HFunction::tabulated({0.5, 1.0}, {2.0, 1.0}), ValidationError);
}

TEST_CASE("parse cost specifications") {
    CHECK(HFunction::parse("power:2.5").name() == "power:2.5");
    CHECK(HFunction::parse("expdecay").kind() == HFunction::Kind::expdecay);
    const std::string path = "repot_test_table.csv";
    {
        std::ofstream out(path);
        out << "t,h\n0,3\n1,2\n2,0.5\n";
    }
    const auto h = HFunction::parse("table:" + path);
    CHECK(h.eval(1.5).value() == doctest::Approx(1.25));
    std::remove(path.c_str());
    CHECK_THROWS_AS(HFunction::parse("cubic"), SchemaError);
    CHECK_THROWS_AS(HFunction::parse("power:x"), SchemaError);
}

TEST_CASE("configuration cost") {
    const auto h = HFunction::power(1.0);
    CHECK(config_cost(h, Configuration({Point{0.0}, Point{1.0}, Point{2.0}})) == ExtReal(2.5));
    CHECK(config_cost(h, Configuration({Point{0.0}, Point{0.0}})).is_infinite());
    CHECK(config_cost(HFunction::expdecay(), Configuration({Point{0.0}, Point{0.0}})) == ExtReal(1.0));
}

TEST_CASE("costly set membership is strict") {
    CHECK_FALSE(in_B_beta(Configuration({Point{0.0}, Point{1.0}}), 1.0));
    CHECK(in_B_beta(Configuration({Point{0.0}, Point{0.5}, Point{5.0}}), 1.0));
    CHECK(in_B_upper(HFunction::power(1.0), Configuration({Point{0.0}, Point{1.0}}), 0.5));
    CHECK_FALSE(in_B_upper(HFunction::power(1.0), Configuration({Point{0.0}, Point{1.0}}), 1.0));
}

TEST_CASE("inverse is a generalized inverse") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (const auto& h : {HFunction::power(1.0), HFunction::power(2.5), HFunction::expdecay(),
                          HFunction::tabulated({0.0, 1.0, 3.0}, {5.0, 1.0, 0.2})}) {
        for (int i = 0; i < 200; ++i) {
            const double s = u(gen);
            const double t = h_inv(h, s);
            if (std::isinf(t)) {
                CHECK(s < h.infimum());
                continue;
            }
            CHECK(h.eval(t).value() <= s * (1 + 1e-12));
            if (s < h.h0()) CHECK(h.eval(t).value() == doctest::Approx(s).epsilon(1e-10));
            const double tt = u(gen);
            if (h.eval(tt).is_finite() && h.eval(tt).value() > h.infimum()) {
                CHECK(h_inv(h, h.eval(tt)) == doctest::Approx(tt).epsilon(1e-10));
            }
        }
    }
}
