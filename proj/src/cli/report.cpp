#include "regforge/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace regforge::cli {

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

json metrics_json(const sim::StepMetrics& m) {
    json j{{"steady_state", m.steady_state}, {"overshoot_pct", m.overshoot_pct}, {"band", m.band},
           {"degenerate", m.degenerate}};
    j["settling_time"] = m.settling_time ? json(*m.settling_time) : json(nullptr);
    j["rise_time"]     = m.rise_time ? json(*m.rise_time) : json(nullptr);
    return j;
}

std::string matrix_text(const Matrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += r == 0 ? "[" : "; [";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", m(r, c));
            out += (c == 0 ? "" : ", ") + std::string(buf);
        }
        out += "]";
    }
    return out + "]";
}

std::string tf_text(const TransferFunction& tf) {
    return "(" + to_string(tf.num()) + ") / (" + to_string(tf.den()) + ")";
}

std::string optional_seconds(const std::optional<double>& v, const char* missing) {
    return v ? fixed(*v, 3) + " s" : std::string(missing);
}

}  // namespace

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

bool RunReport::any_diverged() const {
    for (const auto& r : runs) {
        if (r.diverged) return true;
    }
    return false;
}

std::vector<std::string> electrical_discrepancies(const plant::ElectricalReport& computed) {
    std::vector<std::string> out;
    out.push_back("WARNING: published input power " + fixed(published::kInputPower, 0) + " W and efficiency " +
                  fixed(published::kEfficiency, 2) +
                  " % are not reproducible from the generator circuit equations; computed input power " +
                  fixed(computed.p_in, 2) + " W, efficiency " + fixed(computed.efficiency, 2) + " %");
    if (std::abs(computed.v_out - published::kOpenLoopVoltage) > 0.005 * published::kOpenLoopVoltage ||
        std::abs(computed.p_out - published::kOutputPower) > 0.005 * published::kOutputPower) {
        out.push_back("WARNING: published steady state " + fixed(published::kOpenLoopVoltage, 0) + " V / " +
                      fixed(published::kOutputPower, 0) + " W differs from computed " + fixed(computed.v_out, 2) +
                      " V / " + fixed(computed.p_out, 2) + " W (published gain 18 is a rounding of 256/14)");
    }
    return out;
}

std::string render_text(const RunReport& report) {
    std::ostringstream os;
    os << "== " << report.scenario << " ==\n";
    for (const auto& [label, tf] : report.transfer_functions) {
        os << "transfer function (" << label << "): " << tf_text(tf) << '\n';
    }
    if (report.plant_ss) {
        os << "state space: A = " << matrix_text(report.plant_ss->a()) << ", B = " << matrix_text(report.plant_ss->b())
           << ", C = " << matrix_text(report.plant_ss->c()) << ", D = " << matrix_text(report.plant_ss->d()) << '\n';
    }
    if (report.dc_gain) os << "dc gain: " << fixed(*report.dc_gain, 6) << '\n';
    if (report.k) os << "K = " << matrix_text(*report.k) << '\n';
    if (report.care) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", report.care->residual_norm);
        os << "CARE: P = " << matrix_text(report.care->p) << ", residual " << buf << ", " << report.care->iterations
           << " Newton-Kleinman iterations\n";
    }
    if (report.h) os << "H = " << matrix_text(*report.h) << '\n';
    if (report.controller) {
        os << "controller";
        if (report.convention) os << " [" << *report.convention << "]";
        os << ": A_c = " << matrix_text(report.controller->a()) << ", B_c = " << matrix_text(report.controller->b())
           << ", C_c = " << matrix_text(report.controller->c()) << ", D_c = " << matrix_text(report.controller->d())
           << '\n';
    }
    for (const auto& v : report.verdicts) {
        os << "stability " << v.subject << ": " << (v.hurwitz ? "Hurwitz" : "NOT Hurwitz") << " (char poly "
           << to_string(v.char_poly) << ")\n";
    }
    if (report.electrical) {
        const auto& e = *report.electrical;
        os << "electrical steady state: v_out " << fixed(e.v_out, 2) << " V, i_a " << fixed(e.i_a, 4) << " A, e_g "
           << fixed(e.e_g, 2) << " V, p_out " << fixed(e.p_out, 2) << " W, p_in " << fixed(e.p_in, 2)
           << " W, efficiency " << fixed(e.efficiency, 2) << " %\n";
    }
    if (!report.runs.empty()) {
        os << "runs (settling band +/-2 %):\n";
        for (const auto& r : report.runs) {
            os << "  " << r.label << ": ";
            if (r.diverged) {
                os << "DIVERGED at t = " << fixed(r.final_time, 3) << " s";
            } else {
                os << "steady state " << fixed(r.metrics.steady_state, 4) << ", overshoot "
                   << fixed(r.metrics.overshoot_pct, 2) << " %, settling "
                   << optional_seconds(r.metrics.settling_time, "unsettled") << ", rise "
                   << optional_seconds(r.metrics.rise_time, "n/a");
            }
            if (r.prescale) os << ", prescale " << fixed(*r.prescale, 6);
            if (r.hurwitz) os << ", loop " << (*r.hurwitz ? "Hurwitz" : "NOT Hurwitz");
            os << '\n';
        }
    }
    for (const auto& n : report.notes) os << n << '\n';
    for (const auto& w : report.warnings) os << w << '\n';
    for (const auto& a : report.artifacts) os << "wrote " << a << '\n';
    return os.str();
}

std::string render_json(const RunReport& report) {
    json j;
    j["scenario"] = report.scenario;
    json tfs      = json::array();
    for (const auto& [label, tf] : report.transfer_functions) {
        tfs.push_back({{"label", label}, {"num", tf.num().coeffs()}, {"den", tf.den().coeffs()}});
    }
    j["transfer_functions"] = tfs;
    if (report.plant_ss) {
        j["state_space"] = {{"A", matrix_json(report.plant_ss->a())},
                            {"B", matrix_json(report.plant_ss->b())},
                            {"C", matrix_json(report.plant_ss->c())},
                            {"D", matrix_json(report.plant_ss->d())}};
    }
    if (report.dc_gain) j["dc_gain"] = *report.dc_gain;
    if (report.k) j["K"] = matrix_json(*report.k);
    if (report.h) j["H"] = matrix_json(*report.h);
    if (report.care) {
        j["care"] = {{"P", matrix_json(report.care->p)},
                     {"residual_norm", report.care->residual_norm},
                     {"iterations", report.care->iterations}};
    }
    if (report.controller) {
        j["controller"] = {{"convention", report.convention.value_or("")},
                           {"A", matrix_json(report.controller->a())},
                           {"B", matrix_json(report.controller->b())},
                           {"C", matrix_json(report.controller->c())},
                           {"D", matrix_json(report.controller->d())}};
    }
    json verdicts = json::array();
    for (const auto& v : report.verdicts) {
        verdicts.push_back({{"subject", v.subject}, {"hurwitz", v.hurwitz}, {"char_poly", v.char_poly.coeffs()}});
    }
    j["stability"] = verdicts;
    json runs      = json::array();
    for (const auto& r : report.runs) {
        json jr{{"label", r.label}, {"diverged", r.diverged}, {"metrics", metrics_json(r.metrics)},
                {"final_time", r.final_time}, {"final_value", r.final_value}};
        if (r.hurwitz) jr["hurwitz"] = *r.hurwitz;
        if (r.prescale) jr["prescale"] = *r.prescale;
        runs.push_back(jr);
    }
    j["runs"] = runs;
    if (report.electrical) {
        const auto& e   = *report.electrical;
        j["electrical"] = {{"omega1", e.omega1}, {"v_out", e.v_out}, {"i_a", e.i_a},          {"e_g", e.e_g},
                           {"p_out", e.p_out},   {"p_in", e.p_in},   {"efficiency", e.efficiency}};
    }
    j["notes"]     = report.notes;
    j["warnings"]  = report.warnings;
    j["artifacts"] = report.artifacts;
    return j.dump(2) + "\n";
}

}  // namespace regforge::cli
