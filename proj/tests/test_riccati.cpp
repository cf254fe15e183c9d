#include "doctest.h"
#include "oracles/oracles.hpp"
#include "regforge/error.hpp"
#include "regforge/lti.hpp"
#include "regforge/riccati.hpp"

using namespace regforge;
using namespace regforge::riccati;

namespace {

const Matrix kPublishedA{{-2.5, -1.0}, {1.0, 0.0}};
const Matrix kPublishedB{{1.0}, {0.0}};

}  // namespace

TEST_CASE("scalar CARE") {
    const auto sol = solve_care(Matrix{{-1.0}}, Matrix{{1.0}}, {Matrix{{1.0}}, Matrix{{1.0}}});
    CHECK(std::abs(sol.p(0, 0) - (std::sqrt(2.0) - 1.0)) <= 1e-12);
    CHECK(sol.residual_norm <= kSuccessResidual);
}

TEST_CASE("zero state weight on a stable plant gives zero cost") {
    const auto sol = solve_care(kPublishedA, kPublishedB, {Matrix(2, 2), Matrix{{1.0}}});
    CHECK(sol.p.max_abs() == 0.0);
    CHECK(lqr_gain(kPublishedA, kPublishedB, {Matrix(2, 2), Matrix{{1.0}}}).max_abs() == 0.0);
}

TEST_CASE("published gains") {
    const Matrix k1 = lqr_gain(kPublishedA, kPublishedB, {8.0 * Matrix::identity(2), Matrix{{1.0}}});
    CHECK(k1(0, 0) == doctest::Approx(1.7720).epsilon(1e-3 / 1.772));
    CHECK(std::abs(k1(0, 0) - 1.7720) <= 1e-3);
    CHECK(std::abs(k1(0, 1) - 2.0) <= 1e-3);

    const auto sol = solve_care(kPublishedA, kPublishedB, {8.0 * Matrix::identity(2), Matrix{{1.0}}});
    // K = B'P / R with B = e1: first row of P is K.
    CHECK(std::abs(sol.p(0, 0) - 1.7720) <= 1e-3);
    CHECK(std::abs(sol.p(0, 1) - 2.0) <= 1e-3);

    const Matrix k2 = lqr_gain(kPublishedA, kPublishedB, {3.0 * Matrix::identity(2), Matrix{{5.0}}});
    CHECK(std::abs(k2(0, 0) - 0.2166) <= 1e-3);
    CHECK(std::abs(k2(0, 1) - 0.2649) <= 1e-3);
}

TEST_CASE("published gain agrees with the brute-force oracle") {
    Eigen::Matrix2d a;
    a << -2.5, -1, 1, 0;
    const auto p = oracle::care_2x2(a, Eigen::Vector2d(1, 0), 8.0 * Eigen::Matrix2d::Identity(), 1.0);
    REQUIRE(p);
    CHECK(std::abs((*p)(0, 0) - 1.7720) <= 1e-3);
    CHECK(std::abs((*p)(0, 1) - 2.0) <= 1e-3);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(solve_care(kPublishedA, kPublishedB, {Matrix::identity(2), Matrix{{-1.0}}}), InvalidInput);
    CHECK_THROWS_AS(solve_care(kPublishedA, kPublishedB, {Matrix::identity(3), Matrix{{1.0}}}), InvalidInput);
    CHECK_THROWS_AS(solve_care(kPublishedA, kPublishedB, {Matrix{{1, 0}, {0, -1}}, Matrix{{1.0}}}), InvalidInput);
    // Unstable and uncontrollable mode.
    CHECK_THROWS_AS(solve_care(Matrix{{1.0, 0.0}, {0.0, -1.0}}, Matrix{{0.0}, {1.0}}, {Matrix::identity(2), Matrix{{1.0}}}),
                    InvalidInput);
}

TEST_CASE("scalar oracle on random instances") {
    auto g = oracle::rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const double a = oracle::uniform(g, -3, 3);
        double       b = oracle::uniform(g, -2, 2);
        if (std::abs(b) < 0.05) b = 0.5;
        const double q   = oracle::uniform(g, 0, 5);
        const double r   = oracle::uniform(g, 0.1, 5);
        const auto   sol = solve_care(Matrix{{a}}, Matrix{{b}}, {Matrix{{q}}, Matrix{{r}}});
        const double ref = oracle::scalar_care(a, b, q, r);
        CHECK(std::abs(sol.p(0, 0) - ref) <= 1e-10 * std::max(1.0, ref));
    }
}

TEST_CASE("2x2 brute-force oracle on random stabilizable instances") {
    auto g       = oracle::rng(8);
    int  checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix a = oracle::random_matrix(g, 2, 2, -2, 2);
        const Matrix b = oracle::random_matrix(g, 2, 1, -1, 1);
        const Matrix m = oracle::random_matrix(g, 2, 2, -1, 1);
        const Matrix q = m * m.transpose() + 0.1 * Matrix::identity(2);
        const double r = oracle::uniform(g, 0.2, 3);

        const auto sol = solve_care(a, b, {q, Matrix{{r}}});
        const auto ref = oracle::care_2x2(oracle::to_eigen(a), oracle::to_eigen(b), oracle::to_eigen(q), r);
        REQUIRE_MESSAGE(ref, "oracle found no stabilizing solution, trial " << trial);
        CHECK(max_abs_diff(sol.p, oracle::from_eigen(*ref)) <= 1e-6 * std::max(1.0, sol.p.max_abs()));
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("CARE properties on random well-conditioned systems") {
    auto g = oracle::rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const std::size_t m = n == 1 ? 1 : 1 + trial % 2;
        const Matrix      a = oracle::random_matrix(g, n, n, -2, 2);
        const Matrix      b = oracle::random_matrix(g, n, m, -1, 1);
        if (oracle::controllability_margin(a, b) < 5e-2) continue;
        const Matrix      mq = oracle::random_matrix(g, n, n, -1, 1);
        const Matrix      mr = oracle::random_matrix(g, m, m, -1, 1);
        const CostWeights w{mq * mq.transpose(), mr * mr.transpose() + 0.5 * Matrix::identity(m)};

        const auto sol = solve_care(a, b, w);
        CHECK(sol.residual_norm <= kSuccessResidual);
        CHECK(care_residual(a, b, w, sol.p).frobenius_norm() <= kSuccessResidual);
        CHECK(max_abs_diff(sol.p, sol.p.transpose()) <= 1e-10);
        for (const auto& ev : oracle::eig(sol.p)) CHECK(ev.real() >= -1e-9);
        const Matrix k = lqr_gain(a, b, w);
        CHECK(oracle::all_left_half_plane(oracle::eig(a - b * k)));

        // Only the symmetric part of Q matters.
        const Matrix skew = oracle::random_matrix(g, n, n, -1, 1);
        const Matrix qa   = w.q + (skew - skew.transpose());
        const auto   sa   = solve_care(a, b, {qa, w.r});
        const auto   ss   = solve_care(a, b, {0.5 * (qa + qa.transpose()), w.r});
        CHECK(sa.p == ss.p);
    }
}

TEST_CASE("nearly uncontrollable pair still yields a stabilizing solution") {
    const Matrix a{{1.20581, 0.220926, -0.0782284, 0.850786},
                   {-1.9638, 1.20982, 0.432065, 1.16255},
                   {-0.101085, -0.732857, 0.639484, 0.0999639},
                   {-1.61562, -1.68158, 0.627296, -0.361534}};
    const Matrix b{{0.19994}, {0.546666}, {-0.367254}, {-0.164235}};
    const Matrix q{{1.78213, -0.165036, 0.323657, 0.156938},
                   {-0.165036, 1.38247, -0.451011, 0.883222},
                   {0.323657, -0.451011, 0.780835, -0.808382},
                   {0.156938, 0.883222, -0.808382, 1.66293}};
    const auto sol = solve_care(a, b, {q, Matrix{{1.0}}});
    CHECK(sol.p.max_abs() > 1e5);
    CHECK(sol.residual_norm <= kSuccessResidual * sol.p.max_abs() * sol.p.max_abs());
    CHECK(oracle::all_left_half_plane(oracle::eig(a - b * lqr_gain(a, b, {q, Matrix{{1.0}}}))));
}

TEST_CASE("Lyapunov solver") {
    const Matrix a{{-1.0, 2.0}, {0.0, -3.0}};
    const Matrix q = Matrix::identity(2);
    const Matrix x = solve_lyapunov(a, q);
    CHECK((a.transpose() * x + x * a + q).max_abs() <= 1e-12);
}

TEST_CASE("stabilizing gain") {
    auto g = oracle::rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t m = 1 + trial % 2;
        const Matrix      a = oracle::random_matrix(g, n, n, -1, 3);
        const Matrix      b = oracle::random_matrix(g, n, m, -1, 1);
        if (oracle::controllability_margin(a, b) < 5e-2) continue;
        const Matrix      k = stabilizing_gain(a, b);
        CHECK(oracle::all_left_half_plane(oracle::eig(a - b * k)));
    }
}
