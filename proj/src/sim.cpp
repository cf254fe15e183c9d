#include "regforge/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regforge/error.hpp"

namespace regforge::sim {

namespace {

using Vec = std::vector<double>;

// dx = A x + B u, single input.
void derivative(const Matrix& a, const Matrix& b, const Vec& x, double u, Vec& dx) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = b(i, 0) * u;
        for (std::size_t j = 0; j < n; ++j) {
            s += a(i, j) * x[j];
        }
        dx[i] = s;
    }
}

double output(const StateSpaceModel& ss, const Vec& x, double u) {
    double y = ss.d()(0, 0) * u;
    for (std::size_t j = 0; j < x.size(); ++j) {
        y += ss.c()(0, j) * x[j];
    }
    return y;
}

bool within_limit(double v, double limit) { return std::isfinite(v) && std::abs(v) <= limit; }

// Time at which the series first reaches level (in the direction of sign), linearly interpolated.
std::optional<double> first_crossing(const TimeSeries& ts, double sign, double level) {
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (sign * ts.outputs[k] >= level) {
            if (k == 0) return ts.times[0];
            const double y0 = sign * ts.outputs[k - 1];
            const double y1 = sign * ts.outputs[k];
            const double f  = (level - y0) / (y1 - y0);
            return ts.times[k - 1] + f * (ts.times[k] - ts.times[k - 1]);
        }
    }
    return std::nullopt;
}

}  // namespace

InputKind parse_input_kind(std::string_view name) {
    if (name == "step") return InputKind::Step;
    if (name == "constant") return InputKind::Constant;
    if (name == "zero") return InputKind::Zero;
    throw InvalidInput("unknown input kind '" + std::string(name) + "' (expected step|constant|zero)");
}

std::string_view to_string(InputKind kind) {
    switch (kind) {
        case InputKind::Step: return "step";
        case InputKind::Constant: return "constant";
        case InputKind::Zero: return "zero";
    }
    return "unknown";
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidInput("sim.dt must be > 0");
    }
    if (!(duration >= dt) || !std::isfinite(duration)) {
        throw InvalidInput("sim.duration must be >= sim.dt");
    }
    if (duration / dt > 1e7) {
        throw InvalidInput("sim.duration / sim.dt exceeds 1e7 steps");
    }
    if (!std::isfinite(input_amplitude)) {
        throw InvalidInput("sim.amplitude must be finite");
    }
    if (!(divergence_limit > 0.0)) {
        throw InvalidInput("sim.divergence_limit must be > 0");
    }
}

TimeSeries simulate(const StateSpaceModel& ss, const SimConfig& cfg, bool record_states) {
    cfg.validate();
    if (!ss.is_siso()) {
        throw Unsupported("simulate supports SISO models only");
    }
    const std::size_t n     = ss.states();
    const auto        steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
    const double      u     = cfg.input_kind == InputKind::Zero ? 0.0 : cfg.input_amplitude;
    const double      h     = cfg.dt;

    TimeSeries ts;
    ts.times.reserve(steps + 1);
    ts.inputs.reserve(steps + 1);
    ts.outputs.reserve(steps + 1);
    if (record_states) ts.states.reserve(steps + 1);

    Vec x(n, 0.0), k1(n), k2(n), k3(n), k4(n), tmp(n);
    auto record = [&](std::size_t k) {
        ts.times.push_back(static_cast<double>(k) * h);
        ts.inputs.push_back(u);
        ts.outputs.push_back(output(ss, x, u));
        if (record_states) ts.states.push_back(x);
    };
    record(0);

    for (std::size_t k = 1; k <= steps; ++k) {
        derivative(ss.a(), ss.b(), x, u, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        derivative(ss.a(), ss.b(), tmp, u, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        derivative(ss.a(), ss.b(), tmp, u, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
        derivative(ss.a(), ss.b(), tmp, u, k4);
        for (std::size_t i = 0; i < n; ++i) {
            tmp[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        const bool ok = std::all_of(tmp.begin(), tmp.end(), [&](double v) { return within_limit(v, cfg.divergence_limit); }) &&
                        within_limit(output(ss, tmp, u), cfg.divergence_limit);
        if (!ok) {
            ts.diverged = true;
            break;
        }
        x.swap(tmp);
        record(k);
    }
    return ts;
}

StepMetrics step_metrics(const TimeSeries& ts, double band) {
    const std::size_t n = ts.size();
    if (n < 100 || ts.outputs.size() != n) {
        throw InvalidInput("step_metrics needs at least 100 samples (got " + std::to_string(n) + ")");
    }
    StepMetrics m;
    m.band = band;

    const std::size_t window = std::max<std::size_t>(1, n / 20);
    double            sum    = 0.0;
    for (std::size_t k = n - window; k < n; ++k) sum += ts.outputs[k];
    m.steady_state = sum / static_cast<double>(window);

    if (m.steady_state == 0.0) {
        m.steady_state  = 0.0;
        m.degenerate    = true;
        m.settling_time = 0.0;
        m.rise_time     = 0.0;
        return m;
    }

    const double sign = m.steady_state > 0.0 ? 1.0 : -1.0;
    const double mag  = std::abs(m.steady_state);
    const double peak = sign * *std::max_element(ts.outputs.begin(), ts.outputs.end(), [&](double a, double b) {
        return sign * a < sign * b;
    });
    // A response still creeping upward ends above the window mean; measure the peak
    // against the larger of the two so monotone responses report no overshoot.
    const double final_level = std::max(mag, sign * ts.outputs.back());
    m.overshoot_pct          = std::max(0.0, 100.0 * (peak - final_level) / mag);

    const double tol = band * mag;
    auto         out_of_band = [&](std::size_t k) { return std::abs(ts.outputs[k] - m.steady_state) > tol; };
    std::size_t  last_out    = n;
    for (std::size_t k = n; k-- > 0;) {
        if (out_of_band(k)) {
            last_out = k;
            break;
        }
    }
    if (ts.diverged || (last_out != n && last_out >= n - window)) {
        m.settling_time.reset();
    } else if (last_out == n) {
        m.settling_time = ts.times.front();
    } else {
        // Interpolate the band edge between the last outside sample and the next one.
        const double e0 = std::abs(ts.outputs[last_out] - m.steady_state);
        const double e1 = std::abs(ts.outputs[last_out + 1] - m.steady_state);
        const double f  = e0 == e1 ? 1.0 : (e0 - tol) / (e0 - e1);
        m.settling_time = ts.times[last_out] + f * (ts.times[last_out + 1] - ts.times[last_out]);
    }

    const auto t10 = first_crossing(ts, sign, 0.1 * mag);
    const auto t90 = first_crossing(ts, sign, 0.9 * mag);
    if (t10 && t90) {
        m.rise_time = *t90 - *t10;
    }
    return m;
}

ElectricalTrace electrical_trace(const plant::PlantParams& p, const TimeSeries& v_out) {
    plant::validate(p);
    const auto&       g = p.generator;
    const std::size_t n = v_out.size();

    ElectricalTrace tr;
    tr.times = v_out.times;
    tr.i_a.resize(n);
    tr.e_g.resize(n);
    tr.p_out.resize(n);
    tr.p_in.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        tr.i_a[k]   = v_out.outputs[k] / g.r_l;
        tr.p_out[k] = v_out.outputs[k] * tr.i_a[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
        double di = 0.0;
        if (n >= 2) {
            const std::size_t hi = k == 0 ? 1 : k;
            di = (tr.i_a[hi] - tr.i_a[hi - 1]) / (tr.times[hi] - tr.times[hi - 1]);
        }
        tr.e_g[k]  = g.total_inductance() * di + g.total_resistance() * tr.i_a[k];
        tr.p_in[k] = tr.e_g[k] * tr.i_a[k];
    }
    return tr;
}

ClosedLoopRun run_loop(const StateSpaceModel& loop, double reference, SimConfig cfg) {
    cfg.input_kind      = InputKind::Step;
    cfg.input_amplitude = reference;
    TimeSeries  series = simulate(loop, cfg);
    StepMetrics metrics;
    if (series.size() >= 100) {
        metrics = step_metrics(series);
    } else {
        // Diverged almost immediately; nothing meaningful to measure.
        metrics.steady_state = series.outputs.back();
    }
    const bool  hurwitz = loop.states() == 0 || is_hurwitz(char_poly(loop.a()));
    return {loop, std::move(series), metrics, hurwitz};
}

ClosedLoopRun closed_loop_step(const StateSpaceModel& plant, const StateSpaceModel& controller, double reference,
                               const SimConfig& cfg) {
    return run_loop(feedback_interconnect(plant, controller), reference, cfg);
}

}  // namespace regforge::sim
