#include "regforge/lti.hpp"

#include <cmath>
#include <string>

#include "regforge/error.hpp"

namespace regforge {

namespace {

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

TransferFunction::TransferFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
        throw InvalidInput("transfer function denominator is identically zero");
    }
}

TransferFunction TransferFunction::normalized() const {
    const double lead = den_.leading();
    return {num_ * (1.0 / lead), den_.monic()};
}

StateSpaceModel::StateSpaceModel(Matrix a, Matrix b, Matrix c, Matrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    const bool ok = a_.is_square() && b_.rows() == a_.rows() && c_.cols() == a_.rows() && d_.rows() == c_.rows() &&
                    d_.cols() == b_.cols();
    if (!ok) {
        throw InvalidInput("inconsistent state-space dimensions: A " + shape(a_) + ", B " + shape(b_) + ", C " +
                           shape(c_) + ", D " + shape(d_));
    }
}

StateSpaceModel StateSpaceModel::static_gain(double gain) {
    return {Matrix(0, 0), Matrix(0, 1), Matrix(1, 0), Matrix::scalar(gain)};
}

StateSpaceModel tf_to_ss(const TransferFunction& tf) {
    if (!tf.is_proper()) {
        throw Unsupported("improper transfer function (deg num > deg den) cannot be realized");
    }
    const TransferFunction g = tf.normalized();
    const std::size_t      n = g.den().degree();

    // Split off the direct feedthrough: num = d * den + remainder.
    const double     d         = g.num().degree() == n && !g.num().is_zero() ? g.num().coefficient(n) : 0.0;
    const Polynomial remainder = g.num() - g.den() * d;

    Matrix a(n, n);
    Matrix b(n, 1);
    Matrix c(1, n);
    for (std::size_t j = 0; j < n; ++j) {
        a(0, j) = -g.den().coefficient(n - 1 - j);
        c(0, j) = remainder.coefficient(n - 1 - j);
    }
    for (std::size_t i = 1; i < n; ++i) {
        a(i, i - 1) = 1.0;
    }
    if (n > 0) {
        b(0, 0) = 1.0;
    }
    return {std::move(a), std::move(b), std::move(c), Matrix::scalar(d)};
}

TransferFunction ss_to_tf(const StateSpaceModel& ss) {
    if (!ss.is_siso()) {
        throw Unsupported("ss_to_tf supports SISO models only");
    }
    const std::size_t n = ss.states();
    const Matrix&     a = ss.a();

    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k,
    // adj(sI - A) = sum_k M_k s^(k-1) with M_1 = I.
    std::vector<double> den(n + 1, 0.0);  // den[i] is the coefficient of s^(n-i)
    std::vector<double> num(n + 1, 0.0);
    den[0] = 1.0;
    Matrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + den[k - 1] * Matrix::identity(n);
        // M_k multiplies s^(n-k) in adj(sI - A).
        num[k] = (ss.c() * m * ss.b())(0, 0);
        den[k] = -(a * m).trace() / static_cast<double>(k);
    }
    const double d = ss.d()(0, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        num[i] += d * den[i];
    }
    return {Polynomial(std::move(num)), Polynomial(std::move(den))};
}

TransferFunction tf_series(const TransferFunction& g1, const TransferFunction& g2) {
    return {g1.num() * g2.num(), g1.den() * g2.den()};
}

StateSpaceModel feedback_interconnect(const StateSpaceModel& plant, const StateSpaceModel& controller) {
    if (!plant.is_siso() || !controller.is_siso()) {
        throw Unsupported("feedback_interconnect supports SISO blocks only");
    }
    const std::size_t np = plant.states();
    const std::size_t nc = controller.states();
    const double      dp = plant.d()(0, 0);
    const double      dc = controller.d()(0, 0);
    const double      loop = 1.0 + dp * dc;
    if (std::abs(loop) < 1e-12) {
        throw InvalidInput("singular algebraic loop: 1 + D_plant * D_controller = 0");
    }
    const double s = 1.0 / loop;

    // u = fu x + gu r, y = fy x + gy r, e = r - y.
    Matrix fu = hstack(-dc * plant.c(), controller.c()) * s;
    const double gu = s * dc;
    Matrix fy = hstack(plant.c(), Matrix(1, nc)) + dp * fu;
    const double gy = dp * gu;

    Matrix a(np + nc, np + nc);
    a.set_block(0, 0, plant.a());
    a.set_block(np, np, controller.a());
    a += vstack(plant.b() * fu, controller.b() * (-fy));

    Matrix b = vstack(plant.b() * gu, controller.b() * (1.0 - gy));
    return {std::move(a), std::move(b), std::move(fy), Matrix::scalar(gy)};
}

StateSpaceModel state_feedback_loop(const StateSpaceModel& plant, const Matrix& k, double prescale) {
    if (k.rows() != plant.inputs() || k.cols() != plant.states()) {
        throw InvalidInput("state feedback gain has shape " + shape(k) + ", expected " +
                           std::to_string(plant.inputs()) + "x" + std::to_string(plant.states()));
    }
    return {plant.a() - plant.b() * k, plant.b() * prescale, plant.c() - plant.d() * k, plant.d() * prescale};
}

Polynomial char_poly(const Matrix& a) {
    if (!a.is_square()) {
        throw InvalidInput("char_poly of non-square matrix " + shape(a));
    }
    const std::size_t n = a.rows();
    if (n == 0) return Polynomial{1.0};

    // Householder reduction to upper Hessenberg form (a similarity transform).
    Matrix h = a;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += h(i, k) * h(i, k);
        alpha = std::sqrt(alpha);
        if (alpha == 0.0) continue;
        if (h(k + 1, k) > 0) alpha = -alpha;
        std::vector<double> v(n, 0.0);
        v[k + 1] = h(k + 1, k) - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vv = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vv += v[i] * v[i];
        if (vv == 0.0) continue;
        // H <- (I - 2vv'/v'v) H (I - 2vv'/v'v)
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * h(i, j);
            const double f = 2.0 * dot / vv;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= f * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            const double f = 2.0 * dot / vv;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= f * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }

    // La Budde recurrence on the leading principal submatrices of the Hessenberg form.
    std::vector<Polynomial> p;
    p.reserve(n + 1);
    p.emplace_back(Polynomial{1.0});
    for (std::size_t i = 1; i <= n; ++i) {
        Polynomial next = Polynomial{1.0, -h(i - 1, i - 1)} * p[i - 1];
        double     sub  = 1.0;
        for (std::size_t m = 1; m < i; ++m) {
            sub *= h(i - m, i - m - 1);
            next = next - Polynomial{h(i - m - 1, i - 1) * sub} * p[i - m - 1];
        }
        p.push_back(std::move(next));
    }
    return p[n];
}

bool is_hurwitz(const Polynomial& p) {
    if (p.degree() < 1) {
        throw InvalidInput("is_hurwitz needs a polynomial of degree >= 1");
    }
    const Polynomial q = p.leading() < 0 ? p * -1.0 : p;
    const auto&      c = q.coeffs();
    const std::size_t n = q.degree();

    std::vector<double> prev, cur;
    for (std::size_t i = 0; i <= n; i += 2) prev.push_back(c[i]);
    for (std::size_t i = 1; i <= n; i += 2) cur.push_back(c[i]);
    cur.resize(prev.size(), 0.0);

    if (prev[0] <= 0.0) {
        return false;
    }
    for (std::size_t row = 1; row <= n; ++row) {
        if (!(cur[0] > 0.0)) {
            return false;
        }
        std::vector<double> next(cur.size(), 0.0);
        for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
            next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
        }
        prev = std::move(cur);
        cur  = std::move(next);
    }
    return true;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) { return char_poly(a).roots(); }

double dc_gain(const TransferFunction& tf) {
    const double den0 = tf.den()(0.0);
    if (den0 == 0.0) {
        throw Undefined("dc gain undefined: transfer function has a pole at the origin");
    }
    return tf.num()(0.0) / den0;
}

double dc_gain(const StateSpaceModel& ss) {
    if (!ss.is_siso()) {
        throw Unsupported("dc_gain supports SISO models only");
    }
    if (ss.states() == 0) {
        return ss.d()(0, 0);
    }
    Matrix x;
    try {
        x = solve(ss.a(), ss.b());
    } catch (const InvalidInput&) {
        throw Undefined("dc gain undefined: state matrix is singular");
    }
    return ss.d()(0, 0) - (ss.c() * x)(0, 0);
}

double reference_prescaler(const StateSpaceModel& loop) {
    const double g = dc_gain(loop);
    if (std::abs(g) < 1e-300) {
        throw Undefined("reference prescaler undefined: loop has zero dc gain");
    }
    return 1.0 / g;
}

}  // namespace regforge
