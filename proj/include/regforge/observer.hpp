#pragma once

#include <complex>
#include <span>
#include <string_view>

#include "regforge/lti.hpp"

namespace regforge::observer {

/**
 * @brief Input/output wiring of the observer-based compensator.
 *
 * All three share A_c = A - BK - HC.
 *  - LiteralForward:     B_c = B, C_c = -K, D_c = I; driven by e = r - y in the forward path.
 *  - PaperNumeric:       B_c = H, C_c = +K, D_c = 0; driven by e = r - y in the forward path.
 *  - StandardLuenberger: B_c = H, C_c = -K, D_c = 0; driven by y, with u = N r + C_c x_hat.
 */
enum class Convention { LiteralForward, PaperNumeric, StandardLuenberger };

Convention       parse_convention(std::string_view name);
std::string_view to_string(Convention c);

struct ErrorDynamics {
    Matrix     matrix;     ///< A - HC
    Polynomial char_poly;  ///< det(sI - (A - HC))
    bool       hurwitz = false;
};

/// Stability audit attached to every constructed controller. Never fatal.
struct StabilityAudit {
    ErrorDynamics observer;
    Polynomial    state_feedback_char_poly;  ///< det(sI - (A - BK))
    bool          state_feedback_hurwitz = false;
};

struct ObserverBasedController {
    StateSpaceModel model;
    Convention      convention;
    Matrix          k;
    Matrix          h;
    StabilityAudit  audit;
};

/// Estimation-error dynamics A - HC and its Hurwitz verdict.
ErrorDynamics observer_error_dynamics(const StateSpaceModel& plant, const Matrix& h);

/// Builds the compensator for a SISO plant with D = 0. k is 1*n, h is n*1.
ObserverBasedController build_observer_controller(const StateSpaceModel& plant, const Matrix& k, const Matrix& h,
                                                  Convention convention);

/**
 * @brief Ackermann pole placement for a single-input pair.
 *
 * Returns K (1*n) with eig(A - BK) = desired. The desired set must have n entries
 * and be closed under conjugation. Throws InvalidInput with the controllability
 * matrix rank when (A, B) is not controllable.
 */
Matrix place_poles(const Matrix& a, const Matrix& b, std::span<const std::complex<double>> desired);

/// Same as place_poles with the desired monic characteristic polynomial given directly.
Matrix place_char_poly(const Matrix& a, const Matrix& b, const Polynomial& desired);

/// Observer gain H (n*1) with eig(A - HC) = desired, by placement on the dual pair (A', C').
Matrix place_observer_poles(const Matrix& a, const Matrix& c, std::span<const std::complex<double>> desired);

/**
 * @brief Closed loop from reference r to plant output for the controller's convention.
 *
 * Forward-path conventions use feedback_interconnect; StandardLuenberger injects the
 * plant output into the observer and adds the reference at the plant input. The
 * reference is multiplied by prescale.
 */
StateSpaceModel closed_loop(const StateSpaceModel& plant, const ObserverBasedController& controller,
                            double prescale = 1.0);

}  // namespace regforge::observer
