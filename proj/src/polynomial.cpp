#include "regforge/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace regforge {

namespace {

constexpr int    kMaxDurandKernerIterations = 200;
constexpr double kDurandKernerTolerance     = 1e-12;

std::vector<double> padded(const Polynomial& p, std::size_t length) {
    std::vector<double> out(length - p.coeffs().size(), 0.0);
    out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
    return out;
}

}  // namespace

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { normalize(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

void Polynomial::normalize() {
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](double c) { return c != 0.0; });
    coeffs_.erase(coeffs_.begin(), first);
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
    }
}

Polynomial Polynomial::from_roots(std::span<const std::complex<double>> roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= c[i] * r;
        }
        c = std::move(next);
    }
    std::vector<double> real(c.size());
    std::transform(c.begin(), c.end(), real.begin(), [](const std::complex<double>& z) { return z.real(); });
    return Polynomial(std::move(real));
}

double Polynomial::coefficient(std::size_t power) const noexcept {
    return power > degree() ? 0.0 : coeffs_[degree() - power];
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (double c : coeffs_) {
        acc = acc * s + c;
    }
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
    std::complex<double> acc = 0.0;
    for (double c : coeffs_) {
        acc = acc * s + c;
    }
    return acc;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) {
        return *this;
    }
    Polynomial p = *this;
    const double lead = leading();
    for (double& c : p.coeffs_) {
        c /= lead;
    }
    p.coeffs_.front() = 1.0;
    return p;
}

std::vector<std::complex<double>> Polynomial::roots() const {
    using cplx = std::complex<double>;
    const std::size_t n = degree();
    if (n == 0) {
        return {};
    }
    const Polynomial m = monic();
    if (n == 1) {
        return {cplx(-m.coeffs_[1], 0.0)};
    }

    double bound = 0.0;
    for (std::size_t i = 1; i < m.coeffs_.size(); ++i) {
        bound = std::max(bound, std::abs(m.coeffs_[i]));
    }
    bound += 1.0;

    std::vector<cplx> z(n);
    const cplx        seed(0.4, 0.9);
    cplx              w = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = bound * w;
        w *= seed;
    }

    for (int it = 0; it < kMaxDurandKernerIterations; ++it) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            cplx denom = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) {
                    denom *= z[k] - z[j];
                }
            }
            if (denom == cplx(0.0)) {
                denom = cplx(1e-300);
            }
            const cplx step = m(z[k]) / denom;
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (max_step <= kDurandKernerTolerance) {
            break;
        }
    }

    // Real coefficients: a residual imaginary part at rounding level belongs to a real root.
    for (auto& r : z) {
        if (std::abs(r.imag()) <= 1e-10 * std::max(1.0, std::abs(r))) {
            r = cplx(r.real(), 0.0);
        }
    }
    std::sort(z.begin(), z.end(), [](const cplx& a, const cplx& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return z;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    const std::size_t len = std::max(coeffs_.size(), rhs.coeffs_.size());
    std::vector<double> a = padded(*this, len);
    std::vector<double> b = padded(rhs, len);
    for (std::size_t i = 0; i < len; ++i) {
        a[i] += b[i];
    }
    coeffs_ = std::move(a);
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += rhs * -1.0; }

Polynomial& Polynomial::operator*=(double s) {
    for (double& c : coeffs_) {
        c *= s;
    }
    normalize();
    return *this;
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
Polynomial operator*(Polynomial p, double s) { return p *= s; }
Polynomial operator*(double s, Polynomial p) { return p *= s; }

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    const auto&         a = lhs.coeffs();
    const auto&         b = rhs.coeffs();
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return Polynomial(std::move(c));
}

double max_coeff_diff(const Polynomial& a, const Polynomial& b) {
    const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
    const auto        pa  = padded(a, len);
    const auto        pb  = padded(b, len);
    double            d   = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        d = std::max(d, std::abs(pa[i] - pb[i]));
    }
    return d;
}

double relative_coeff_error(const Polynomial& a, const Polynomial& b) {
    double scale = 0.0;
    for (double c : a.coeffs()) scale = std::max(scale, std::abs(c));
    for (double c : b.coeffs()) scale = std::max(scale, std::abs(c));
    return scale == 0.0 ? 0.0 : max_coeff_diff(a, b) / scale;
}

std::string to_string(const Polynomial& p, int precision) {
    std::ostringstream os;
    os.precision(precision);
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const double      c     = p.coeffs()[i];
        const std::size_t power = p.degree() - i;
        if (c == 0.0 && !(p.is_zero())) {
            continue;
        }
        const double mag = std::abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (mag != 1.0 || power == 0) {
            os << mag;
            if (power > 0) os << " ";
        }
        if (power >= 1) os << "s";
        if (power >= 2) os << "^" << power;
        first = false;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace regforge
