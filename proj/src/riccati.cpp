#include "regforge/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "regforge/error.hpp"
#include "regforge/lti.hpp"
#include "regforge/observer.hpp"

namespace regforge::riccati {

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool is_positive_definite(const Matrix& m) {
    // Cholesky without storing the factor beyond what the test needs.
    const std::size_t n = m.rows();
    Matrix            l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) return false;
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return true;
}

double min_eigenvalue(const Matrix& symmetric) {
    double lo = 0.0;
    bool   first = true;
    for (const auto& ev : eigenvalues(symmetric)) {
        lo    = first ? ev.real() : std::min(lo, ev.real());
        first = false;
    }
    return lo;
}

bool closed_loop_hurwitz(const Matrix& a, const Matrix& b, const Matrix& k) {
    return a.rows() == 0 || is_hurwitz(char_poly(a - b * k));
}

}  // namespace

Matrix care_residual(const Matrix& a, const Matrix& b, const CostWeights& w, const Matrix& p) {
    const Matrix pb = p * b;
    return a.transpose() * p + p * a - pb * solve(w.r, pb.transpose()) + w.q;
}

Matrix solve_lyapunov(const Matrix& a, const Matrix& q) {
    const std::size_t n  = a.rows();
    const Matrix      at = a.transpose();
    const Matrix      eye = Matrix::identity(n);
    // Column-stacked vec: vec(A'X + XA) = (I kron A' + A' kron I) vec(X).
    const Matrix      op = kron(eye, at) + kron(at, eye);

    Matrix rhs(n * n, 1);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            rhs(c * n + r, 0) = -q(r, c);
        }
    }
    const Matrix v = solve(op, rhs);
    Matrix       x(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            x(r, c) = v(c * n + r, 0);
        }
    }
    return x;
}

Matrix stabilizing_gain(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    if (n == 0 || is_hurwitz(char_poly(a))) {
        return Matrix(m, n);
    }
    if (m == 1) {
        std::vector<std::complex<double>> poles;
        for (std::size_t i = 1; i <= n; ++i) poles.emplace_back(-static_cast<double>(i), 0.0);
        return observer::place_poles(a, b, poles);
    }
    // Bass: with beta above every eigenvalue real part, Z solving
    // -(A + beta I) Z - Z (A + beta I)' + 2 B B' = 0 is positive definite for a
    // controllable pair, and K = B' Z^-1 places eig(A - BK) left of -beta.
    const double beta    = a.frobenius_norm() + 1.0;
    const Matrix shifted = -(a + beta * Matrix::identity(n));
    const Matrix z       = solve_lyapunov(shifted.transpose(), 2.0 * b * b.transpose());
    return b.transpose() * inverse(z);
}

RiccatiSolution solve_care(const Matrix& a, const Matrix& b, const CostWeights& w) {
    const std::size_t n = a.rows();
    if (!a.is_square() || b.rows() != n || w.q.rows() != n || w.q.cols() != n || !w.r.is_square() ||
        w.r.rows() != b.cols()) {
        throw InvalidInput("solve_care: inconsistent dimensions");
    }
    if (max_abs_diff(w.r, w.r.transpose()) > 1e-12 * std::max(1.0, w.r.max_abs()) || !is_positive_definite(w.r)) {
        throw InvalidInput("solve_care: input weight R must be symmetric positive definite");
    }
    const CostWeights weights{symmetrized(w.q), w.r};
    if (n > 0 && min_eigenvalue(weights.q) < -1e-9 * std::max(1.0, weights.q.max_abs())) {
        throw InvalidInput("solve_care: state weight Q must be positive semidefinite");
    }

    Matrix k = stabilizing_gain(a, b);
    if (!closed_loop_hurwitz(a, b, k)) {
        throw InvalidInput("solve_care: could not find a stabilizing initial gain; (A, B) not stabilizable");
    }

    const Matrix    bt = b.transpose();
    RiccatiSolution sol{Matrix(n, n), 0.0, 0};
    double          best     = std::numeric_limits<double>::infinity();
    double          previous = best;
    double          scale    = 1.0;
    for (int it = 1; it <= kMaxIterations; ++it) {
        const Matrix closed = a - b * k;
        Matrix       p      = symmetrized(solve_lyapunov(closed, weights.q + k.transpose() * weights.r * k));
        const double residual = care_residual(a, b, weights, p).frobenius_norm();
        if (residual < best) {
            best              = residual;
            sol.p             = p;
            sol.residual_norm = residual;
            sol.iterations    = it;
            const Matrix pb   = p * b;
            scale = std::max({1.0, 2.0 * (a.transpose() * p).frobenius_norm(),
                              (pb * solve(weights.r, pb.transpose())).frobenius_norm(), weights.q.frobenius_norm()});
        }
        k = solve(weights.r, bt * p);
        // One extra step after reaching the target lands at the rounding floor. Past the
        // floor the residual stops shrinking and further iterations only add noise.
        if (residual == 0.0 || previous <= kTargetResidual ||
            (best <= kSuccessResidual * scale && residual >= previous)) {
            break;
        }
        previous = residual;
    }
    // Absolute residual for well-scaled problems; relative to the size of the
    // equation's terms when P is large enough that the absolute floor exceeds it.
    if (!(best <= kSuccessResidual * scale)) {
        throw ConvergenceError("solve_care: Newton-Kleinman did not converge (residual " + std::to_string(best) +
                                   " after " + std::to_string(kMaxIterations) + " iterations)",
                               best, kMaxIterations);
    }
    k = solve(weights.r, bt * sol.p);
    if (!closed_loop_hurwitz(a, b, k)) {
        throw ConvergenceError("solve_care: converged solution is not stabilizing", best, sol.iterations);
    }
    return sol;
}

Matrix lqr_gain(const Matrix& a, const Matrix& b, const CostWeights& w) {
    const RiccatiSolution sol = solve_care(a, b, w);
    return solve(w.r, b.transpose() * sol.p);
}

}  // namespace regforge::riccati
