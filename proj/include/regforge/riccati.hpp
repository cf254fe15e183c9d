#pragma once

#include "regforge/matrix.hpp"

namespace regforge::riccati {

/// Quadratic cost weights: q n*n symmetric PSD on states, r m*m symmetric PD on inputs.
struct CostWeights {
    Matrix q;
    Matrix r;
};

/// Stabilizing solution of A'P + PA - P B R^-1 B' P + Q = 0.
struct RiccatiSolution {
    Matrix p;
    double residual_norm = 0.0;  ///< Frobenius norm of the CARE residual at p
    int    iterations    = 0;    ///< Newton-Kleinman steps taken
};

inline constexpr double kSuccessResidual = 1e-8;
inline constexpr double kTargetResidual  = 1e-10;
inline constexpr int    kMaxIterations   = 50;

/// A'P + PA - P B R^-1 B' P + Q.
Matrix care_residual(const Matrix& a, const Matrix& b, const CostWeights& w, const Matrix& p);

/// Solves A'X + XA + Q = 0 through the Kronecker-vectorized linear system.
Matrix solve_lyapunov(const Matrix& a, const Matrix& q);

/**
 * Gain K with A - BK Hurwitz: zero when A already is, Ackermann placement at
 * -1..-n for a single input, Bass's Lyapunov construction otherwise.
 */
Matrix stabilizing_gain(const Matrix& a, const Matrix& b);

/**
 * @brief Newton-Kleinman iteration for the continuous algebraic Riccati equation.
 *
 * q is symmetrized before use. Throws InvalidInput for bad dimensions, an indefinite
 * r, a non-PSD q or a pair that cannot be stabilized; ConvergenceError when the
 * residual stays above kSuccessResidual after kMaxIterations. For large P the bound
 * is scaled by the norm of the equation's terms (A'P, PBR^-1B'P, Q) when that exceeds 1.
 */
RiccatiSolution solve_care(const Matrix& a, const Matrix& b, const CostWeights& w);

/// K = R^-1 B' P for the stabilizing CARE solution.
Matrix lqr_gain(const Matrix& a, const Matrix& b, const CostWeights& w);

}  // namespace regforge::riccati
