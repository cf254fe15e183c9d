#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace regforge {

/**
 * @brief Real polynomial in the Laplace variable s, coefficients highest degree first.
 *
 * Leading exact zeros are stripped on construction, so the leading coefficient is
 * nonzero unless the polynomial is identically zero (stored as {0}).
 */
class Polynomial {
   public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    /// Monic real polynomial with the given roots. Imaginary parts of the product are discarded.
    static Polynomial from_roots(std::span<const std::complex<double>> roots);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    std::size_t                degree() const noexcept { return coeffs_.size() - 1; }
    bool                       is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    double                     leading() const noexcept { return coeffs_.front(); }

    /// Coefficient of s^power (0 when power > degree).
    double coefficient(std::size_t power) const noexcept;

    double               operator()(double s) const;
    std::complex<double> operator()(std::complex<double> s) const;

    Polynomial monic() const;

    /// Roots by Durand-Kerner iteration (200 iterations max, 1e-12 relative step tolerance).
    std::vector<std::complex<double>> roots() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(double s);

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

   private:
    void normalize();

    std::vector<double> coeffs_;
};

Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
Polynomial operator-(Polynomial lhs, const Polynomial& rhs);
Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
Polynomial operator*(Polynomial p, double s);
Polynomial operator*(double s, Polynomial p);

/// Largest coefficient difference relative to the largest coefficient magnitude of either argument.
/// Shorter polynomials are zero-padded.
double relative_coeff_error(const Polynomial& a, const Polynomial& b);

/// Largest absolute coefficient difference, zero-padded.
double max_coeff_diff(const Polynomial& a, const Polynomial& b);

/// "s^2 + 2.5 s + 1" style rendering.
std::string to_string(const Polynomial& p, int precision = 6);
std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace regforge
