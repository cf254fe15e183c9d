#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace regforge {

/**
 * @brief Dense row-major real matrix.
 *
 * Sized for the small systems of this library (n <= 8). Zero-sized
 * dimensions are valid and represent static (stateless) blocks.
 */
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix column(std::span<const double> values);
    static Matrix row(std::span<const double> values);
    static Matrix diagonal(std::span<const double> values);
    static Matrix scalar(double value) { return Matrix(1, 1, value); }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool        is_square() const noexcept { return rows_ == cols_; }
    bool        empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double  operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    double trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// Copy of the block starting at (r0, c0).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
    void   set_block(std::size_t r0, std::size_t c0, const Matrix& value);

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend bool operator==(const Matrix&, const Matrix&) = default;

   private:
    std::size_t         rows_ = 0;
    std::size_t         cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Matrix m, double s);
Matrix operator*(double s, Matrix m);

/// [top; bottom]
Matrix vstack(const Matrix& top, const Matrix& bottom);
/// [left, right]
Matrix hstack(const Matrix& left, const Matrix& right);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// Solves a * x = b by Gaussian elimination with partial pivoting. Throws InvalidInput if a is singular.
Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

/// Numerical rank from row echelon form; tolerance is relative to the largest entry.
std::size_t rank(const Matrix& a, double rel_tol = 1e-10);

/// Largest element-wise absolute difference; dimensions must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace regforge
