#include "doctest.h"
#include "oracles/oracles.hpp"
#include "regforge/error.hpp"
#include "regforge/plant.hpp"

using namespace regforge;
using namespace regforge::plant;

namespace {

PlantParams random_params(std::mt19937_64& g) {
    auto u = [&](double lo, double hi) { return oracle::uniform(g, lo, hi); };
    return {.turbine   = {.tau_t = u(0.1, 5)},
            .generator = {.k1 = u(0.1, 10), .n = u(0.5, 8), .l_f = u(0.1, 6), .r_f = u(0.1, 6), .l_a = u(0.1, 6),
                          .r_a = u(0.1, 6), .r_l = u(0.5, 20)}};
}

}  // namespace

TEST_CASE("turbine transfer function") {
    const auto t = turbine_tf({.tau_t = 2.0});
    CHECK(t.num() == Polynomial{2});
    CHECK(t.den() == Polynomial{2, 1});
    const auto unit = turbine_tf({.tau_t = 1.0});
    CHECK(unit.den() == Polynomial{1, 1});
    for (double tau : {0.3, 1.0, 2.0, 7.5}) CHECK(dc_gain(turbine_tf({.tau_t = tau})) == doctest::Approx(tau));
    CHECK_THROWS_AS(turbine_tf({.tau_t = 0.0}), InvalidInput);
}

TEST_CASE("generator transfer function") {
    const auto g = generator_tf(reference_params().generator);
    CHECK(g.num() == Polynomial{128});
    CHECK(g.den() == Polynomial{7, 14});
    CHECK(dc_gain(g) == doctest::Approx(128.0 / 14.0));

    const auto unit = generator_tf({.k1 = 1, .n = 1, .l_f = 0.5, .r_f = 0.25, .l_a = 0.5, .r_a = 0.25, .r_l = 0.5});
    CHECK(unit.num() == Polynomial{0.5});
    CHECK(unit.den() == Polynomial{1, 1});
}

TEST_CASE("plant transfer function") {
    const auto tf = plant_tf(reference_params());
    CHECK(tf.num() == Polynomial{256});
    CHECK(tf.den() == Polynomial{14, 35, 14});
    CHECK(tf.normalized().den() == Polynomial{1, 2.5, 1});
    CHECK(tf.normalized().num().coeffs()[0] == doctest::Approx(18.285714285714));

    const auto rounded = plant_tf(reference_params(), Preset::PaperRounded);
    CHECK(rounded.num() == Polynomial{18});
    CHECK(rounded.den() == Polynomial{1, 2.5, 1});

    // tau = 1 and unity electrical constants with R total 3, L total 1: 1/((s+1)(s+3))
    const auto unity = plant_tf({.turbine   = {.tau_t = 1},
                                 .generator = {.k1 = 1, .n = 1, .l_f = 0.5, .r_f = 1, .l_a = 0.5, .r_a = 1, .r_l = 1}});
    CHECK(unity.num() == Polynomial{1});
    CHECK(unity.den() == Polynomial{1, 4, 3});
}

TEST_CASE("parameter validation names the field") {
    auto p            = reference_params();
    p.generator.r_l   = 0.0;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("generator.r_l"), InvalidInput);
    p                 = reference_params();
    p.turbine.tau_t   = -1;
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("turbine.tau_t"), InvalidInput);
    CHECK(parse_preset("paper-rounded") == Preset::PaperRounded);
    CHECK_THROWS_AS(parse_preset("rounded"), InvalidInput);
}

TEST_CASE("steady-state electrical report") {
    SUBCASE("reference parameters at 5 g/s") {
        const auto r = steady_state_report(reference_params(), 5.0);
        CHECK(r.omega1 == doctest::Approx(10.0));
        CHECK(r.e_g == doctest::Approx(160.0));
        CHECK(r.i_a == doctest::Approx(160.0 / 14.0));
        CHECK(r.v_out == doctest::Approx(1280.0 / 14.0));
        CHECK(r.p_out == doctest::Approx(1044.898).epsilon(1e-6));
        CHECK(r.p_in == doctest::Approx(1828.571).epsilon(1e-6));
        CHECK(r.efficiency == doctest::Approx(800.0 / 14.0));
    }
    SUBCASE("zero flow") {
        const auto r = steady_state_report(reference_params(), 0.0);
        CHECK(r.v_out == 0.0);
        CHECK(r.p_in == 0.0);
        CHECK(r.efficiency == doctest::Approx(57.142857));
    }
    SUBCASE("homogeneity") {
        const auto a = steady_state_report(reference_params(), 3.0);
        const auto b = steady_state_report(reference_params(), 6.0);
        CHECK(b.v_out == doctest::Approx(2 * a.v_out));
        CHECK(b.e_g == doctest::Approx(2 * a.e_g));
        CHECK(b.p_out == doctest::Approx(4 * a.p_out));
        CHECK(b.p_in == doctest::Approx(4 * a.p_in));
        CHECK(b.efficiency == doctest::Approx(a.efficiency));
    }
    CHECK_THROWS_AS(steady_state_report(reference_params(), -1.0), InvalidInput);
}

TEST_CASE("plant properties on random parameter sets") {
    auto g = oracle::rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p  = random_params(g);
        const auto tf = plant_tf(p);
        const auto series = tf_series(turbine_tf(p.turbine), generator_tf(p.generator));
        CHECK(tf.num() == series.num());
        CHECK(tf.den() == series.den());

        const double f_in = oracle::uniform(g, 0.1, 20);
        const auto   r    = steady_state_report(p, f_in);
        // Two derivation paths: transfer-function dc gain and the circuit chain.
        CHECK(std::abs(r.v_out - dc_gain(tf) * f_in) <= 1e-9 * std::abs(r.v_out));
        CHECK(r.efficiency == doctest::Approx(100.0 * p.generator.r_l / p.generator.total_resistance()));
        CHECK(r.i_a == doctest::Approx(r.v_out / p.generator.r_l));
        CHECK(r.e_g == doctest::Approx(r.i_a * p.generator.total_resistance()));
    }
}
