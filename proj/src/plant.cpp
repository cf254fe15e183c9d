#include "regforge/plant.hpp"

#include <string>

#include "regforge/error.hpp"

namespace regforge::plant {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0)) {
        throw InvalidInput(std::string("parameter ") + field + " must be > 0 (got " + std::to_string(value) + ")");
    }
}

}  // namespace

Preset parse_preset(std::string_view name) {
    if (name == "exact") return Preset::Exact;
    if (name == "paper-rounded") return Preset::PaperRounded;
    throw InvalidInput("unknown preset '" + std::string(name) + "' (expected exact|paper-rounded)");
}

std::string_view to_string(Preset preset) { return preset == Preset::Exact ? "exact" : "paper-rounded"; }

PlantParams reference_params() {
    return {.turbine   = {.tau_t = 2.0},
            .generator = {.k1 = 4.0, .n = 4.0, .l_f = 3.0, .r_f = 2.0, .l_a = 4.0, .r_a = 4.0, .r_l = 8.0}};
}

void validate(const PlantParams& p) {
    require_positive(p.turbine.tau_t, "turbine.tau_t");
    require_positive(p.generator.k1, "generator.k1");
    require_positive(p.generator.n, "generator.n");
    require_positive(p.generator.l_f, "generator.l_f");
    require_positive(p.generator.r_f, "generator.r_f");
    require_positive(p.generator.l_a, "generator.l_a");
    require_positive(p.generator.r_a, "generator.r_a");
    require_positive(p.generator.r_l, "generator.r_l");
}

TransferFunction turbine_tf(const TurbineParams& p) {
    require_positive(p.tau_t, "turbine.tau_t");
    return {Polynomial{p.tau_t}, Polynomial{p.tau_t, 1.0}};
}

TransferFunction generator_tf(const GeneratorParams& p) {
    validate({.turbine = {.tau_t = 1.0}, .generator = p});
    return {Polynomial{p.n * p.r_l * p.k1}, Polynomial{p.total_inductance(), p.total_resistance()}};
}

TransferFunction plant_tf(const PlantParams& p) {
    validate(p);
    return tf_series(turbine_tf(p.turbine), generator_tf(p.generator));
}

TransferFunction paper_rounded_tf() { return {Polynomial{18.0}, Polynomial{1.0, 2.5, 1.0}}; }

TransferFunction plant_tf(const PlantParams& p, Preset preset) {
    return preset == Preset::Exact ? plant_tf(p) : paper_rounded_tf();
}

ElectricalReport steady_state_report(const PlantParams& p, double f_in) {
    validate(p);
    if (!(f_in >= 0.0)) {
        throw InvalidInput("steam flow f_in must be >= 0");
    }
    const GeneratorParams& g = p.generator;
    ElectricalReport       r;
    r.omega1     = p.turbine.tau_t * f_in;
    r.e_g        = g.k1 * g.n * r.omega1;
    r.i_a        = r.e_g / g.total_resistance();
    r.v_out      = g.r_l * r.i_a;
    r.p_out      = r.v_out * r.i_a;
    r.p_in       = r.e_g * r.i_a;
    r.efficiency = r.p_in > 0.0 ? 100.0 * r.p_out / r.p_in : 100.0 * g.r_l / g.total_resistance();
    return r;
}

}  // namespace regforge::plant
