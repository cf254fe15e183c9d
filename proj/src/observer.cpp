#include "regforge/observer.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "regforge/error.hpp"

namespace regforge::observer {

namespace {

void require_siso_strictly_proper(const StateSpaceModel& plant) {
    if (!plant.is_siso()) {
        throw Unsupported("observer design supports SISO plants only");
    }
    if (plant.d()(0, 0) != 0.0) {
        throw Unsupported("observer design requires a plant with D = 0");
    }
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols) {
        throw InvalidInput(std::string(name) + " has shape " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
}

void require_conjugate_closed(std::span<const std::complex<double>> poles) {
    for (const auto& p : poles) {
        if (p.imag() == 0.0) {
            continue;
        }
        bool found = false;
        for (const auto& q : poles) {
            if (std::abs(q - std::conj(p)) <= 1e-9 * std::max(1.0, std::abs(p))) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw InvalidInput("desired pole set is not closed under complex conjugation");
        }
    }
}

}  // namespace

Convention parse_convention(std::string_view name) {
    if (name == "eq17-literal") return Convention::LiteralForward;
    if (name == "paper-numeric") return Convention::PaperNumeric;
    if (name == "standard-luenberger") return Convention::StandardLuenberger;
    throw InvalidInput("unknown convention '" + std::string(name) +
                       "' (expected eq17-literal|paper-numeric|standard-luenberger)");
}

std::string_view to_string(Convention c) {
    switch (c) {
        case Convention::LiteralForward: return "eq17-literal";
        case Convention::PaperNumeric: return "paper-numeric";
        case Convention::StandardLuenberger: return "standard-luenberger";
    }
    return "unknown";
}

ErrorDynamics observer_error_dynamics(const StateSpaceModel& plant, const Matrix& h) {
    require_shape(h, plant.states(), plant.outputs(), "observer gain H");
    ErrorDynamics out{plant.a() - h * plant.c(), Polynomial{}, false};
    out.char_poly = char_poly(out.matrix);
    out.hurwitz   = out.char_poly.degree() >= 1 && is_hurwitz(out.char_poly);
    return out;
}

ObserverBasedController build_observer_controller(const StateSpaceModel& plant, const Matrix& k, const Matrix& h,
                                                  Convention convention) {
    require_siso_strictly_proper(plant);
    const std::size_t n = plant.states();
    require_shape(k, 1, n, "state feedback gain K");
    require_shape(h, n, 1, "observer gain H");

    Matrix a_c = plant.a() - plant.b() * k - h * plant.c();
    Matrix b_c, c_c, d_c;
    switch (convention) {
        case Convention::LiteralForward:
            b_c = plant.b();
            c_c = -k;
            d_c = Matrix::identity(1);
            break;
        case Convention::PaperNumeric:
            b_c = h;
            c_c = k;
            d_c = Matrix(1, 1);
            break;
        case Convention::StandardLuenberger:
            b_c = h;
            c_c = -k;
            d_c = Matrix(1, 1);
            break;
    }

    StabilityAudit audit{observer_error_dynamics(plant, h), char_poly(plant.a() - plant.b() * k), false};
    audit.state_feedback_hurwitz = n > 0 && is_hurwitz(audit.state_feedback_char_poly);

    return {StateSpaceModel(std::move(a_c), std::move(b_c), std::move(c_c), std::move(d_c)), convention, k, h,
            std::move(audit)};
}

Matrix place_char_poly(const Matrix& a, const Matrix& b, const Polynomial& desired) {
    const std::size_t n = a.rows();
    if (!a.is_square() || b.rows() != n) {
        throw InvalidInput("place_poles: inconsistent dimensions");
    }
    if (b.cols() != 1) {
        throw Unsupported("place_poles supports single-input pairs only");
    }
    if (desired.degree() != n || desired.is_zero()) {
        throw InvalidInput("place_poles: need exactly " + std::to_string(n) + " desired poles");
    }

    // Controllability matrix [B, AB, ..., A^(n-1) B].
    Matrix wc(n, n);
    Matrix col = b;
    for (std::size_t j = 0; j < n; ++j) {
        wc.set_block(0, j, col);
        col = a * col;
    }
    const std::size_t r = rank(wc);
    if (r < n) {
        throw InvalidInput("place_poles: (A, B) is not controllable; controllability matrix rank " +
                           std::to_string(r) + " < " + std::to_string(n));
    }

    // Ackermann: K = e_n' Wc^-1 phi(A), phi the desired monic polynomial.
    const Polynomial phi = desired.monic();
    Matrix           phi_a(n, n);
    for (double c : phi.coeffs()) {
        phi_a = phi_a * a + c * Matrix::identity(n);
    }
    const Matrix x = solve(wc, phi_a);
    return x.block(n - 1, 0, 1, n);
}

Matrix place_poles(const Matrix& a, const Matrix& b, std::span<const std::complex<double>> desired) {
    if (desired.size() != a.rows()) {
        throw InvalidInput("place_poles: need exactly " + std::to_string(a.rows()) + " desired poles, got " +
                           std::to_string(desired.size()));
    }
    require_conjugate_closed(desired);
    return place_char_poly(a, b, Polynomial::from_roots(desired));
}

Matrix place_observer_poles(const Matrix& a, const Matrix& c, std::span<const std::complex<double>> desired) {
    return place_poles(a.transpose(), c.transpose(), desired).transpose();
}

StateSpaceModel closed_loop(const StateSpaceModel& plant, const ObserverBasedController& controller,
                            double prescale) {
    const StateSpaceModel& ctl = controller.model;
    if (controller.convention != Convention::StandardLuenberger) {
        const StateSpaceModel loop = feedback_interconnect(plant, ctl);
        return {loop.a(), loop.b() * prescale, loop.c(), loop.d() * prescale};
    }
    require_siso_strictly_proper(plant);
    const std::size_t n  = plant.states();
    const std::size_t nc = ctl.states();

    // u = N r + C_c xh + D_c y, xh' = A_c xh + B_c y, y = C x.
    Matrix a(n + nc, n + nc);
    a.set_block(0, 0, plant.a() + plant.b() * ctl.d() * plant.c());
    a.set_block(0, n, plant.b() * ctl.c());
    a.set_block(n, 0, ctl.b() * plant.c());
    a.set_block(n, n, ctl.a());
    Matrix b = vstack(plant.b() * prescale, Matrix(nc, 1));
    Matrix c = hstack(plant.c(), Matrix(1, nc));
    return {std::move(a), std::move(b), std::move(c), Matrix(1, 1)};
}

}  // namespace regforge::observer
