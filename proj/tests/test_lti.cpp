#include "doctest.h"
#include "oracles/oracles.hpp"
#include "regforge/error.hpp"
#include "regforge/lti.hpp"
#include "regforge/observer.hpp"

using namespace regforge;

namespace {

const Matrix kPublishedA{{-2.5, -1.0}, {1.0, 0.0}};
const Matrix kPublishedB{{1.0}, {0.0}};
const Matrix kPublishedC{{0.0, 18.0}};

StateSpaceModel published_plant() { return {kPublishedA, kPublishedB, kPublishedC, Matrix(1, 1)}; }

}  // namespace

TEST_CASE("tf_to_ss: controllable canonical form") {
    SUBCASE("rounded plant") {
        const auto ss = tf_to_ss({Polynomial{18}, Polynomial{1, 2.5, 1}});
        CHECK(ss.a() == kPublishedA);
        CHECK(ss.b() == kPublishedB);
        CHECK(ss.c() == kPublishedC);
        CHECK(ss.d() == Matrix{{0.0}});
    }
    SUBCASE("first order") {
        const auto ss = tf_to_ss({Polynomial{1}, Polynomial{1, 1}});
        CHECK(ss.a() == Matrix{{-1.0}});
        CHECK(ss.b() == Matrix{{1.0}});
        CHECK(ss.c() == Matrix{{1.0}});
    }
    SUBCASE("non-monic denominator is normalized") {
        const auto ss = tf_to_ss({Polynomial{256}, Polynomial{14, 35, 14}});
        CHECK(ss.a() == kPublishedA);
        CHECK(ss.b() == kPublishedB);
        CHECK(ss.c()(0, 0) == 0.0);
        CHECK(ss.c()(0, 1) == doctest::Approx(256.0 / 14.0).epsilon(1e-15));
    }
    SUBCASE("biproper splits off feedthrough") {
        const auto ss = tf_to_ss({Polynomial{1, 2.5, 19}, Polynomial{1, 2.5, 1}});
        CHECK(ss.d()(0, 0) == 1.0);
        CHECK(ss.c() == kPublishedC);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(TransferFunction(Polynomial{1}, Polynomial{0}), InvalidInput);
        CHECK_THROWS_AS(tf_to_ss({Polynomial{1, 0, 0}, Polynomial{1, 1}}), Unsupported);
    }
}

TEST_CASE("ss_to_tf") {
    SUBCASE("published realization") {
        const auto tf = ss_to_tf(published_plant());
        CHECK(tf.num() == Polynomial{18});
        CHECK(tf.den() == Polynomial{1, 2.5, 1});
    }
    SUBCASE("first order") {
        const auto tf = ss_to_tf({Matrix{{-1.0}}, Matrix{{1.0}}, Matrix{{1.0}}, Matrix{{0.0}}});
        CHECK(tf.num() == Polynomial{1});
        CHECK(tf.den() == Polynomial{1, 1});
    }
    SUBCASE("feedthrough adds D times den") {
        const auto tf = ss_to_tf({kPublishedA, kPublishedB, kPublishedC, Matrix{{1.0}}});
        CHECK(tf.num() == Polynomial{1, 2.5, 19});
        CHECK(tf.den() == Polynomial{1, 2.5, 1});
    }
    SUBCASE("MIMO rejected") {
        CHECK_THROWS_AS(ss_to_tf({kPublishedA, Matrix(2, 2), Matrix(1, 2), Matrix(1, 2)}), Unsupported);
    }
}

TEST_CASE("round trip on random strictly proper transfer functions") {
    auto g = oracle::rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const int           n = 1 + trial % 4;
        std::vector<double> den{1.0}, num;
        for (int i = 0; i < n; ++i) den.push_back(oracle::uniform(g, 0.5, 4.0));
        for (int i = 0; i < n; ++i) num.push_back(oracle::uniform(g, -3.0, 3.0));
        const TransferFunction tf{Polynomial(num), Polynomial(den)};
        const TransferFunction back = ss_to_tf(tf_to_ss(tf));
        CHECK(relative_coeff_error(back.den(), tf.den()) <= 1e-9);
        CHECK(relative_coeff_error(back.num(), tf.num()) <= 1e-9);
    }
}

TEST_CASE("tf_series multiplies numerators and denominators") {
    const auto g = tf_series({Polynomial{2}, Polynomial{2, 1}}, {Polynomial{128}, Polynomial{7, 14}});
    CHECK(g.num() == Polynomial{256});
    CHECK(g.den() == Polynomial{14, 35, 14});

    const TransferFunction one(Polynomial{1}, Polynomial{1});
    const auto             same = tf_series(g, one);
    CHECK(same.num() == g.num());
    CHECK(same.den() == g.den());

    const auto two = tf_series({Polynomial{1}, Polynomial{1, 1}}, {Polynomial{1}, Polynomial{1, 2}});
    CHECK(two.den() == Polynomial{1, 3, 2});
}

TEST_CASE("feedback_interconnect") {
    SUBCASE("unity feedback integrator") {
        const StateSpaceModel integrator(Matrix{{0.0}}, Matrix{{1.0}}, Matrix{{1.0}}, Matrix{{0.0}});
        const auto            loop = feedback_interconnect(integrator, StateSpaceModel::static_gain(1.0));
        const auto            tf   = ss_to_tf(loop);
        CHECK(tf.num() == Polynomial{1});
        CHECK(tf.den() == Polynomial{1, 1});
    }
    SUBCASE("static gain: characteristic polynomial is den + K num") {
        for (double k : {0.0, 0.05, 1.0, 3.7}) {
            const auto loop = feedback_interconnect(published_plant(), StateSpaceModel::static_gain(k));
            const auto cp   = char_poly(loop.a());
            CHECK(max_coeff_diff(cp, Polynomial{1, 2.5, 1 + 18 * k}) <= 1e-12);
        }
    }
    SUBCASE("algebraic loop") {
        const StateSpaceModel biproper(Matrix{{-1.0}}, Matrix{{1.0}}, Matrix{{1.0}}, Matrix{{1.0}});
        CHECK_THROWS_AS(feedback_interconnect(biproper, StateSpaceModel::static_gain(-1.0)), InvalidInput);
        // D_p D_c != -1 is resolved: 1/(s+1)+1 with gain 2 -> (2s+4)/(3s+5)
        const auto tf = ss_to_tf(feedback_interconnect(biproper, StateSpaceModel::static_gain(2.0))).normalized();
        CHECK(max_coeff_diff(tf.den(), Polynomial{1, 5.0 / 3.0}) <= 1e-12);
        CHECK(max_coeff_diff(tf.num(), Polynomial{2.0 / 3.0, 4.0 / 3.0}) <= 1e-12);
    }
    SUBCASE("published observer-based controller in the forward path") {
        const auto obs  = observer::build_observer_controller(published_plant(), Matrix{{1.772, 2.0}},
                                                              Matrix{{2.0}, {-0.5}}, observer::Convention::PaperNumeric);
        const auto loop = feedback_interconnect(published_plant(), obs.model);
        CHECK(loop.states() == 4);
        const auto ev  = eigenvalues(loop.a());
        const auto ref = oracle::eig(loop.a());
        REQUIRE(ev.size() == 4);
        for (const auto& r : ref) {
            double best = 1e300;
            for (const auto& z : ev) best = std::min(best, std::abs(z - r));
            CHECK(best < 1e-6);
        }
        MESSAGE("paper-numeric forward-path closed-loop eigenvalues: " << ev[0] << ' ' << ev[1] << ' ' << ev[2] << ' '
                                                                       << ev[3]);
    }
}

TEST_CASE("char_poly") {
    CHECK(char_poly(kPublishedA) == Polynomial{1, 2.5, 1});
    CHECK(char_poly(Matrix(2, 2)) == Polynomial{1, 0, 0});
    // trace 4.728, determinant (-4.272)(9) - (-39)(1) = 0.552
    const auto p = char_poly(Matrix{{-4.272, -39.0}, {1.0, 9.0}});
    CHECK(max_coeff_diff(p, Polynomial{1, -4.728, 0.552}) <= 1e-12);
}

TEST_CASE("char_poly vanishes at oracle eigenvalues") {
    auto g = oracle::rng(2);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const Matrix      a = oracle::random_matrix(g, n, n, -1.0, 1.0);
        const auto        p = char_poly(a);
        for (const auto& lambda : oracle::eig(a)) {
            CHECK(std::abs(p(lambda)) <= 1e-8);
        }
    }
}

TEST_CASE("is_hurwitz") {
    CHECK(is_hurwitz(Polynomial{1, 2.5, 1}));
    CHECK_FALSE(is_hurwitz(Polynomial{1, -6.5, 14.5}));
    CHECK_FALSE(is_hurwitz(Polynomial{1, 0}));
    CHECK_FALSE(is_hurwitz(Polynomial{1, 0, 1}));
    CHECK(is_hurwitz(Polynomial{-1, -3, -2}));
    CHECK_THROWS_AS(is_hurwitz(Polynomial{5}), InvalidInput);
}

TEST_CASE("is_hurwitz agrees with oracle roots on random polynomials") {
    auto g        = oracle::rng(3);
    int  stable   = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int           n = 2 + trial % 3;
        std::vector<double> c{1.0};
        for (int i = 0; i < n; ++i) c.push_back(oracle::uniform(g, -1.0, 6.0));
        const Polynomial p(c);
        const bool       expected = oracle::all_left_half_plane(oracle::roots(p));
        stable += expected;
        CHECK(is_hurwitz(p) == expected);
    }
    // Both outcomes must be exercised.
    CHECK(stable > 100);
    CHECK(stable < 900);
}

TEST_CASE("dc_gain") {
    CHECK(dc_gain(TransferFunction(Polynomial{18}, Polynomial{1, 2.5, 1})) == 18.0);
    CHECK(dc_gain(TransferFunction(Polynomial{256}, Polynomial{14, 35, 14})) == doctest::Approx(256.0 / 14.0));
    CHECK_THROWS_AS(dc_gain(TransferFunction(Polynomial{1}, Polynomial{1, 0})), Undefined);
    CHECK(dc_gain(published_plant()) == doctest::Approx(18.0));
    CHECK(reference_prescaler(state_feedback_loop(published_plant(), Matrix{{1.772, 2.0}})) == doctest::Approx(1.0 / 6.0));
}
