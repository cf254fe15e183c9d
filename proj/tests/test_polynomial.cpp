#include "doctest.h"
#include "oracles/oracles.hpp"
#include "regforge/polynomial.hpp"

using regforge::Polynomial;

TEST_CASE("leading zeros are stripped") {
    const Polynomial p{0, 0, 1, 2};
    CHECK(p.degree() == 1);
    CHECK(p.coeffs() == std::vector<double>{1, 2});
    CHECK(Polynomial{0, 0}.is_zero());
    CHECK(Polynomial{0, 0}.degree() == 0);
}

TEST_CASE("arithmetic") {
    const Polynomial a{1, 1};
    const Polynomial b{1, 2};
    CHECK(a * b == Polynomial{1, 3, 2});
    CHECK(a + b == Polynomial{2, 3});
    CHECK((a - a).is_zero());
    CHECK(Polynomial{1, 2.5, 1}(2.0) == 10.0);
    CHECK(to_string(Polynomial{1, -6.5, 14.5}) == "s^2 - 6.5 s + 14.5");
}

TEST_CASE("Durand-Kerner roots match companion-matrix eigenvalues") {
    auto g = oracle::rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int           n = 1 + trial % 5;
        std::vector<double> c{1.0};
        for (int i = 0; i < n; ++i) c.push_back(oracle::uniform(g, -5, 5));
        const Polynomial p(c);
        const auto       got = p.roots();
        const auto       ref = oracle::roots(p);
        REQUIRE(got.size() == ref.size());
        // Every oracle root has a matching computed root.
        for (const auto& r : ref) {
            double best = 1e300;
            for (const auto& z : got) best = std::min(best, std::abs(z - r));
            CHECK(best <= 1e-6 * std::max(1.0, std::abs(r)));
        }
    }
}

TEST_CASE("from_roots inverts roots") {
    const std::vector<std::complex<double>> rs{{-1, 2}, {-1, -2}, {-3, 0}};
    const Polynomial                        p = Polynomial::from_roots(rs);
    CHECK(regforge::max_coeff_diff(p, Polynomial{1, 5, 11, 15}) < 1e-12);
}
