#pragma once

#include <complex>
#include <vector>

#include "regforge/matrix.hpp"
#include "regforge/polynomial.hpp"

namespace regforge {

/// SISO rational function num(s)/den(s). The denominator is never identically zero.
class TransferFunction {
   public:
    TransferFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }

    bool is_proper() const noexcept { return num_.degree() <= den_.degree() || num_.is_zero(); }

    /// Same rational function with a monic denominator.
    TransferFunction normalized() const;

    std::complex<double> operator()(std::complex<double> s) const { return num_(s) / den_(s); }

   private:
    Polynomial num_;
    Polynomial den_;
};

/**
 * @brief Continuous-time LTI model x' = A x + B u, y = C x + D u.
 *
 * Dimensions are checked on construction: A n*n, B n*m, C p*n, D p*m.
 * n = 0 is a static gain block.
 */
class StateSpaceModel {
   public:
    StateSpaceModel(Matrix a, Matrix b, Matrix c, Matrix d);

    /// Stateless block y = gain * u.
    static StateSpaceModel static_gain(double gain);

    const Matrix& a() const noexcept { return a_; }
    const Matrix& b() const noexcept { return b_; }
    const Matrix& c() const noexcept { return c_; }
    const Matrix& d() const noexcept { return d_; }

    std::size_t states() const noexcept { return a_.rows(); }
    std::size_t inputs() const noexcept { return b_.cols(); }
    std::size_t outputs() const noexcept { return c_.rows(); }
    bool        is_siso() const noexcept { return inputs() == 1 && outputs() == 1; }

   private:
    Matrix a_, b_, c_, d_;
};

/// Controllable canonical realization; the denominator is made monic first.
StateSpaceModel tf_to_ss(const TransferFunction& tf);

/// C adj(sI - A) B / det(sI - A) + D via Faddeev-LeVerrier. SISO only.
TransferFunction ss_to_tf(const StateSpaceModel& ss);

/// Cascade g2 after g1. No pole-zero cancellation.
TransferFunction tf_series(const TransferFunction& g1, const TransferFunction& g2);

/**
 * @brief Unity negative feedback with the controller in the forward path.
 *
 * e = r - y, u = controller(e), y = plant(u). The closed loop has state
 * [x_plant; x_controller], input r and output y. A nonzero feedthrough loop is
 * resolved exactly; throws InvalidInput when 1 + D_p * D_c = 0.
 */
StateSpaceModel feedback_interconnect(const StateSpaceModel& plant, const StateSpaceModel& controller);

/// Closed loop of u = N r - K x: (A - BK, B N, C - DK, D N).
StateSpaceModel state_feedback_loop(const StateSpaceModel& plant, const Matrix& k, double prescale = 1.0);

/// det(sI - A) via Faddeev-LeVerrier.
Polynomial char_poly(const Matrix& a);

/// Routh-Hurwitz test. A zero first-column entry counts as not Hurwitz. Throws on constants.
bool is_hurwitz(const Polynomial& p);

/// Eigenvalues of A as roots of its characteristic polynomial.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

/// num(0)/den(0). Throws Undefined for a pole at the origin.
double dc_gain(const TransferFunction& tf);

/// SISO steady-state gain D - C A^-1 B. Throws Undefined when A is singular.
double dc_gain(const StateSpaceModel& ss);

/// Scalar N with dc_gain(loop) * N = 1, i.e. the prescale that makes a loop track its reference.
double reference_prescaler(const StateSpaceModel& loop);

}  // namespace regforge
