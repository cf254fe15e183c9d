#include "regforge/cli/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "regforge/cli/io_error.hpp"
#include "regforge/error.hpp"

namespace regforge::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t                   pos = 0;
    while (pos < s.size()) {
        const auto start = s.find_first_not_of(seps, pos);
        if (start == std::string_view::npos) break;
        auto end = s.find_first_of(seps, start);
        if (end == std::string_view::npos) end = s.size();
        out.push_back(s.substr(start, end - start));
        pos = end;
    }
    return out;
}

constexpr std::string_view kParamKeys[] = {"turbine.tau_t", "generator.k1",  "generator.n",   "generator.l_f",
                                           "generator.r_f", "generator.l_a", "generator.r_a", "generator.r_l"};

// Built-in scenarios. Same format as scenario files.
struct Builtin {
    std::string_view name;
    std::string_view text;
};

constexpr Builtin kBuiltins[] = {
    {"paper-open-loop", R"(# Open-loop plant driven by a constant 5 g/s steam flow.
name = paper-open-loop
plant.preset = exact
controller.kind = none
sim.dt = 1e-3
sim.duration = 20
sim.input = step
sim.amplitude = 5
)"},
    {"paper-observer", R"(# Observer-based controller with the published gains: K from LQR (Q = 8I, R = 1), H = [2; -0.5].
name = paper-observer
plant.preset = paper-rounded
controller.kind = observer
controller.q_diag = 8 8
controller.r = 1
controller.h = 2; -0.5
controller.convention = paper-numeric
reference = 220
sim.dt = 1e-3
sim.duration = 15
)"},
    {"paper-observer-stable", R"(# Observer-based controller with H placed at {-5, -6} by dual pole placement.
name = paper-observer-stable
plant.preset = paper-rounded
controller.kind = observer
controller.q_diag = 8 8
controller.r = 1
controller.observer_poles = -5 -6
controller.convention = standard-luenberger
reference = 220
sim.dt = 1e-3
sim.duration = 15
)"},
    {"paper-lqr", R"(# LQR state feedback, Q = 3I, R = 5, with reference prescaling.
name = paper-lqr
plant.preset = paper-rounded
controller.kind = lqr
controller.q_diag = 3 3
controller.r = 5
reference = 220
sim.dt = 1e-3
sim.duration = 15
)"},
};

}  // namespace

double parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    double v  = 0.0;
    const auto* begin = text.data();
    const auto* end   = text.data() + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw InvalidInput("'" + std::string(what) + "': not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> parse_numbers(std::string_view text, std::string_view what) {
    std::vector<double> out;
    for (auto tok : split(text, " \t,")) out.push_back(parse_number(tok, what));
    return out;
}

KeyValueFile KeyValueFile::parse(std::string_view text, std::string_view origin) {
    KeyValueFile kv;
    kv.origin_ = std::string(origin);
    std::size_t line_no = 0;
    std::size_t pos     = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos                   = end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        const auto where = kv.origin_ + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos) {
            throw InvalidInput(where + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw InvalidInput(where + ": empty key");
        }
        if (!kv.values_.emplace(key, value).second) {
            throw InvalidInput(where + ": duplicate key '" + key + "'");
        }
    }
    return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

bool KeyValueFile::has_prefix(std::string_view prefix) const {
    return std::any_of(values_.begin(), values_.end(), [&](const auto& kv) { return kv.first.starts_with(prefix); });
}

const std::string& KeyValueFile::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw InvalidInput(origin_ + ": missing required key '" + key + "'");
    }
    return it->second;
}

std::optional<std::string> KeyValueFile::find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? std::nullopt : std::optional<std::string>(it->second);
}

double KeyValueFile::number(const std::string& key) const { return parse_number(get(key), key); }

double KeyValueFile::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::vector<double> KeyValueFile::numbers(const std::string& key) const { return parse_numbers(get(key), key); }

Matrix KeyValueFile::matrix(const std::string& key) const {
    std::vector<std::vector<double>> rows;
    for (auto row : split(get(key), ";")) {
        if (trim(row).empty()) continue;
        rows.push_back(parse_numbers(row, key));
    }
    if (rows.empty()) {
        throw InvalidInput("'" + key + "': empty matrix");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) {
            throw InvalidInput("'" + key + "': ragged matrix rows");
        }
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

plant::PlantParams parse_plant_params(const KeyValueFile& kv) {
    double v[std::size(kParamKeys)];
    for (std::size_t i = 0; i < std::size(kParamKeys); ++i) {
        v[i] = kv.number(std::string(kParamKeys[i]));
    }
    plant::PlantParams p{.turbine   = {.tau_t = v[0]},
                         .generator = {.k1 = v[1], .n = v[2], .l_f = v[3], .r_f = v[4], .l_a = v[5], .r_a = v[6], .r_l = v[7]}};
    plant::validate(p);
    return p;
}

bool Scenario::wants(Artifact a) const { return std::find(outputs.begin(), outputs.end(), a) != outputs.end(); }

Scenario parse_scenario(const KeyValueFile& kv) {
    Scenario sc;
    if (auto name = kv.find("name")) sc.name = *name;
    if (sc.name.empty() || sc.name.find_first_of("/\\ ") != std::string::npos) {
        throw InvalidInput("scenario name must be a non-empty identifier");
    }

    if (auto preset = kv.find("plant.preset")) sc.preset = plant::parse_preset(*preset);
    if (kv.has_prefix("plant.tf.")) {
        sc.explicit_tf = TransferFunction(Polynomial(kv.numbers("plant.tf.num")), Polynomial(kv.numbers("plant.tf.den")));
    } else if (kv.has_prefix("plant.ss.")) {
        const Matrix a = kv.matrix("plant.ss.a");
        const Matrix b = kv.matrix("plant.ss.b");
        const Matrix c = kv.matrix("plant.ss.c");
        const Matrix d = kv.has("plant.ss.d") ? kv.matrix("plant.ss.d") : Matrix(c.rows(), b.cols());
        sc.explicit_ss = StateSpaceModel(a, b, c, d);
    }
    if (kv.has_prefix("turbine.") || kv.has_prefix("generator.")) {
        sc.params = parse_plant_params(kv);
    } else if (!sc.explicit_tf && !sc.explicit_ss) {
        sc.params = plant::reference_params();
    }

    ControllerSpec& ctl  = sc.controller;
    const std::string kind = kv.find("controller.kind").value_or("none");
    if (kind == "none") {
        ctl.kind = ControllerKind::None;
    } else if (kind == "lqr") {
        ctl.kind = ControllerKind::Lqr;
    } else if (kind == "observer") {
        ctl.kind = ControllerKind::Observer;
    } else if (kind == "ss") {
        ctl.kind = ControllerKind::StateSpace;
    } else {
        throw InvalidInput("controller.kind: unknown '" + kind + "' (expected none|lqr|observer|ss)");
    }
    if (ctl.kind == ControllerKind::Lqr || ctl.kind == ControllerKind::Observer) {
        if (!kv.has("controller.k")) {
            ctl.q_diag = kv.numbers("controller.q_diag");
            ctl.r      = kv.number("controller.r");
        }
        if (kv.has("controller.k")) ctl.k = Matrix::row(kv.numbers("controller.k"));
    }
    if (ctl.kind == ControllerKind::Observer) {
        if (kv.has("controller.h")) {
            ctl.h = kv.matrix("controller.h");
            if (ctl.h->rows() == 1) ctl.h = ctl.h->transpose();
        } else {
            ctl.observer_poles = kv.numbers("controller.observer_poles");
        }
        if (auto conv = kv.find("controller.convention")) ctl.convention = observer::parse_convention(*conv);
    }
    if (ctl.kind == ControllerKind::StateSpace) {
        if (!kv.has("controller.ss.a") && !kv.has("controller.ss.b") && !kv.has("controller.ss.c")) {
            // Only D given: a stateless gain.
            ctl.model = StateSpaceModel::static_gain(kv.number("controller.ss.d"));
        } else {
            ctl.model = StateSpaceModel(kv.matrix("controller.ss.a"), kv.matrix("controller.ss.b"),
                                        kv.matrix("controller.ss.c"), kv.matrix("controller.ss.d"));
        }
    }
    if (auto pre = kv.find("controller.prescale"); pre && *pre != "auto") {
        ctl.prescale = parse_number(*pre, "controller.prescale");
    }

    if (kv.has("reference")) sc.reference = kv.number("reference");
    if (sc.reference && ctl.kind == ControllerKind::None) {
        throw InvalidInput("reference requires a controller (controller.kind is none)");
    }
    if (!sc.reference && ctl.kind != ControllerKind::None) {
        throw InvalidInput("a closed-loop scenario needs a 'reference'");
    }

    sc.sim.dt               = kv.number_or("sim.dt", 1e-3);
    sc.sim.duration         = kv.number_or("sim.duration", ctl.kind == ControllerKind::None ? 20.0 : 15.0);
    sc.sim.input_amplitude  = kv.number_or("sim.amplitude", 1.0);
    sc.sim.divergence_limit = kv.number_or("sim.divergence_limit", sc.sim.divergence_limit);
    if (auto input = kv.find("sim.input")) sc.sim.input_kind = sim::parse_input_kind(*input);
    sc.sim.validate();

    if (auto outs = kv.find("outputs")) {
        sc.outputs.clear();
        for (auto tok : split(*outs, " \t,")) {
            if (tok == "csv") sc.outputs.push_back(Artifact::Csv);
            else if (tok == "svg") sc.outputs.push_back(Artifact::Svg);
            else if (tok == "report") sc.outputs.push_back(Artifact::Report);
            else throw InvalidInput("outputs: unknown artifact '" + std::string(tok) + "'");
        }
    }
    return sc;
}

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> names;
    for (const auto& b : kBuiltins) names.emplace_back(b.name);
    return names;
}

std::optional<std::string> builtin_scenario(std::string_view name) {
    for (const auto& b : kBuiltins) {
        if (b.name == name) return std::string(b.text);
    }
    return std::nullopt;
}

Scenario load_scenario(const std::string& name_or_path) {
    if (auto text = builtin_scenario(name_or_path); text && !std::filesystem::exists(name_or_path)) {
        return parse_scenario(KeyValueFile::parse(*text, name_or_path));
    }
    return parse_scenario(KeyValueFile::load(name_or_path));
}

}  // namespace regforge::cli
