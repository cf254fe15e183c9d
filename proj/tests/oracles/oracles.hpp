#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical routines except for plain data types.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "regforge/matrix.hpp"
#include "regforge/polynomial.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline Eigen::MatrixXd to_eigen(const regforge::Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    return e;
}

inline regforge::Matrix from_eigen(const Eigen::MatrixXd& e) {
    regforge::Matrix m(e.rows(), e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
    return m;
}

/// Eigenvalues by Eigen's QR-based solver.
inline std::vector<cplx> eig(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return {};
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    std::vector<cplx>                   out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

inline std::vector<cplx> eig(const regforge::Matrix& a) { return eig(to_eigen(a)); }

/// Polynomial roots as eigenvalues of the companion matrix.
inline std::vector<cplx> roots(const regforge::Polynomial& p) {
    const auto        n = p.degree();
    Eigen::MatrixXd   comp = Eigen::MatrixXd::Zero(n, n);
    const double      lead = p.leading();
    for (std::size_t j = 0; j < n; ++j) comp(0, j) = -p.coeffs()[j + 1] / lead;
    for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    return eig(comp);
}

inline bool all_left_half_plane(const std::vector<cplx>& zs) {
    return std::all_of(zs.begin(), zs.end(), [](const cplx& z) { return z.real() < 0.0; });
}

/// Positive root of 2aP - (b^2/r) P^2 + q = 0.
inline double scalar_care(double a, double b, double q, double r) {
    return r * (a + std::sqrt(a * a + b * b * q / r)) / (b * b);
}

/// y(t) for 1/(tau s + 1) under a unit step.
inline double first_order_step(double tau, double t) { return 1.0 - std::exp(-t / tau); }

/// Unit step of wn^2/(s^2 + 2 zeta wn s + wn^2), 0 < zeta < 1.
inline double second_order_step(double zeta, double wn, double t) {
    const double wd  = wn * std::sqrt(1.0 - zeta * zeta);
    const double phi = std::acos(zeta);
    return 1.0 - std::exp(-zeta * wn * t) / std::sqrt(1.0 - zeta * zeta) * std::sin(wd * t + phi);
}

/// Percent overshoot of an underdamped second-order step.
inline double second_order_overshoot(double zeta) {
    return 100.0 * std::exp(-M_PI * zeta / std::sqrt(1.0 - zeta * zeta));
}

/**
 * Brute-force stabilizing CARE solution for n = 2, single input. The Riccati
 * differential equation dP/dt = A'P + PA - PBR^-1B'P + Q is marched from P = 0 to
 * steady state (its limit is the stabilizing solution when Q > 0), then polished by
 * Newton on the three unknowns (p11, p12, p22). A grid of Newton starting points is
 * the fallback. Only a root with P PSD and A - B R^-1 B' P Hurwitz is returned.
 */
inline std::optional<Eigen::Matrix2d> care_2x2(const Eigen::Matrix2d& a, const Eigen::Vector2d& b,
                                               const Eigen::Matrix2d& q, double r) {
    auto make_p = [](const Eigen::Vector3d& v) {
        Eigen::Matrix2d p;
        p << v(0), v(1), v(1), v(2);
        return p;
    };
    auto flow = [&](const Eigen::Matrix2d& p) -> Eigen::Matrix2d {
        return a.transpose() * p + p * a - p * b * b.transpose() * p / r + q;
    };
    auto residual = [&](const Eigen::Vector3d& v) {
        const Eigen::Matrix2d res = flow(make_p(v));
        return Eigen::Vector3d(res(0, 0), res(0, 1), res(1, 1));
    };
    auto size_of = [&](const Eigen::Vector3d& v) {
        return 1.0 + q.norm() + 2.0 * a.norm() * v.norm() + v.squaredNorm() * b.squaredNorm() / r;
    };
    auto stabilizing = [&](const Eigen::Matrix2d& p) {
        const Eigen::Matrix2d closed = a - b * b.transpose() * p / r;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> sa(p);
        return all_left_half_plane(eig(Eigen::MatrixXd(closed))) && sa.eigenvalues().minCoeff() >= -1e-9;
    };
    auto polish = [&](Eigen::Vector3d v) -> std::optional<Eigen::Matrix2d> {
        for (int it = 0; it < 100; ++it) {
            const Eigen::Vector3d f = residual(v);
            if (f.norm() < 1e-14 * size_of(v)) break;
            Eigen::Matrix3d jac;
            for (int c = 0; c < 3; ++c) {
                Eigen::Vector3d dv = v;
                const double    h  = 1e-7 * std::max(1.0, std::abs(v(c)));
                dv(c) += h;
                jac.col(c) = (residual(dv) - f) / h;
            }
            v -= jac.fullPivLu().solve(f);
            if (!v.allFinite()) return std::nullopt;
        }
        if (residual(v).norm() > 1e-11 * size_of(v)) return std::nullopt;
        const Eigen::Matrix2d p = make_p(v);
        if (!stabilizing(p)) return std::nullopt;
        return p;
    };

    // Riccati differential equation, RK4 with a step scaled to the current stiffness.
    Eigen::Matrix2d p = Eigen::Matrix2d::Zero();
    for (int step = 0; step < 2000000; ++step) {
        const double          h  = 0.05 / (1.0 + 2.0 * a.norm() + p.norm() * b.squaredNorm() / r);
        const Eigen::Matrix2d k1 = flow(p);
        if (k1.norm() < 1e-9 * (1.0 + p.norm())) break;
        const Eigen::Matrix2d k2 = flow(p + 0.5 * h * k1);
        const Eigen::Matrix2d k3 = flow(p + 0.5 * h * k2);
        const Eigen::Matrix2d k4 = flow(p + h * k3);
        p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!p.allFinite()) break;
    }
    if (p.allFinite()) {
        if (auto polished = polish(Eigen::Vector3d(p(0, 0), 0.5 * (p(0, 1) + p(1, 0)), p(1, 1)))) return polished;
    }

    const int grid = 6;
    for (double scale : {1.0, 10.0, 100.0, 1e3, 1e4}) {
        for (int i = 0; i <= grid; ++i) {
            for (int j = 0; j <= grid; ++j) {
                for (int k = 0; k <= grid; ++k) {
                    const Eigen::Vector3d v(scale * (2.0 * i / grid - 0.5), scale * (2.0 * j / grid - 1.0),
                                            scale * (2.0 * k / grid - 0.5));
                    if (auto found = polish(v)) return found;
                }
            }
        }
    }
    return std::nullopt;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline regforge::Matrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols, double lo, double hi) {
    regforge::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(g, lo, hi);
    return m;
}

/// sigma_min / sigma_max of the controllability matrix [B AB ... A^(n-1)B]; 0 when uncontrollable.
inline double controllability_margin(const regforge::Matrix& a, const regforge::Matrix& b) {
    const Eigen::MatrixXd ea = to_eigen(a), eb = to_eigen(b);
    const auto            n = ea.rows(), m = eb.cols();
    Eigen::MatrixXd       ctrb(n, n * m);
    Eigen::MatrixXd       block = eb;
    for (Eigen::Index j = 0; j < n; ++j) {
        ctrb.middleCols(j * m, m) = block;
        block                     = ea * block;
    }
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(ctrb).singularValues();
    return sv(0) == 0.0 ? 0.0 : sv(n - 1) / sv(0);
}

}  // namespace oracle
