#include "regforge/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "regforge/error.hpp"

namespace regforge {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidInput(std::string("matrix ") + op + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw InvalidInput("matrix literal: ragged rows");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::column(std::span<const double> values) {
    Matrix m(values.size(), 1);
    std::copy(values.begin(), values.end(), m.data_.begin());
    return m;
}

Matrix Matrix::row(std::span<const double> values) {
    Matrix m(1, values.size());
    std::copy(values.begin(), values.end(), m.data_.begin());
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

double Matrix::trace() const {
    if (!is_square()) {
        throw InvalidInput("trace of non-square matrix");
    }
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) {
        s += v * v;
    }
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) {
        throw InvalidInput("matrix block out of range");
    }
    Matrix b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            b(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& value) {
    if (r0 + value.rows() > rows_ || c0 + value.cols() > cols_) {
        throw InvalidInput("matrix set_block out of range");
    }
    for (std::size_t r = 0; r < value.rows(); ++r) {
        for (std::size_t c = 0; c < value.cols(); ++c) {
            (*this)(r0 + r, c0 + c) = value(r, c);
        }
    }
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += rhs.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_shape(*this, rhs, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= rhs.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) {
        v *= s;
    }
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator-(Matrix m) { return m *= -1.0; }
Matrix operator*(Matrix m, double s) { return m *= s; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw InvalidInput("matrix *: inner dimension mismatch " + std::to_string(lhs.cols()) + " vs " +
                           std::to_string(rhs.rows()));
    }
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t r = 0; r < lhs.rows(); ++r) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(r, k);
            if (a == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < rhs.cols(); ++c) {
                out(r, c) += a * rhs(k, c);
            }
        }
    }
    return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols() != bottom.cols()) {
        throw InvalidInput("vstack: column mismatch");
    }
    Matrix out(top.rows() + bottom.rows(), top.cols());
    out.set_block(0, 0, top);
    out.set_block(top.rows(), 0, bottom);
    return out;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
    if (left.rows() != right.rows()) {
        throw InvalidInput("hstack: row mismatch");
    }
    Matrix out(left.rows(), left.cols() + right.cols());
    out.set_block(0, 0, left);
    out.set_block(0, left.cols(), right);
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out.set_block(i * b.rows(), j * b.cols(), a(i, j) * b);
        }
    }
    return out;
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || a.rows() != b.rows()) {
        throw InvalidInput("solve: dimension mismatch");
    }
    const std::size_t n = a.rows();
    Matrix            lu = a;
    Matrix            x  = b;
    const double      scale = std::max(a.max_abs(), 1e-300);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) {
                pivot = r;
            }
        }
        if (std::abs(lu(pivot, k)) <= 1e-14 * scale) {
            throw InvalidInput("solve: matrix is singular to working precision");
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(lu(k, c), lu(pivot, c));
            }
            for (std::size_t c = 0; c < x.cols(); ++c) {
                std::swap(x(k, c), x(pivot, c));
            }
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = lu(r, k) / lu(k, k);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t c = k; c < n; ++c) {
                lu(r, c) -= f * lu(k, c);
            }
            for (std::size_t c = 0; c < x.cols(); ++c) {
                x(r, c) -= f * x(k, c);
            }
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            double s = x(k, c);
            for (std::size_t j = k + 1; j < n; ++j) {
                s -= lu(k, j) * x(j, c);
            }
            x(k, c) = s / lu(k, k);
        }
    }
    return x;
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

std::size_t rank(const Matrix& a, double rel_tol) {
    Matrix            m     = a;
    const double      tol   = rel_tol * std::max(a.max_abs(), 1e-300);
    std::size_t       r     = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (std::abs(m(i, c)) > std::abs(m(pivot, c))) {
                pivot = i;
            }
        }
        if (std::abs(m(pivot, c)) <= tol) {
            continue;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::swap(m(r, j), m(pivot, j));
        }
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const double f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                m(i, j) -= f * m(r, j);
            }
        }
        ++r;
    }
    return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "diff");
    return (a - b).max_abs();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r == 0 ? "[" : ", [");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            os << (c == 0 ? "" : ", ") << m(r, c);
        }
        os << ']';
    }
    return os << ']';
}

}  // namespace regforge
