#pragma once

#include <string_view>

#include "regforge/lti.hpp"

namespace regforge::plant {

/// First-order steam vessel lag. tau_t absorbs volume and compressibility.
struct TurbineParams {
    double tau_t = 0.0;  ///< s

    bool operator==(const TurbineParams&) const = default;
};

/// Series-wound DC generator with resistive load.
struct GeneratorParams {
    double k1  = 0.0;  ///< V*s/rad, emf per unit shaft speed
    double n   = 0.0;  ///< gear ratio
    double l_f = 0.0;  ///< H
    double r_f = 0.0;  ///< ohm
    double l_a = 0.0;  ///< H
    double r_a = 0.0;  ///< ohm
    double r_l = 0.0;  ///< ohm

    double total_inductance() const noexcept { return l_f + l_a; }
    double total_resistance() const noexcept { return r_f + r_a + r_l; }

    bool operator==(const GeneratorParams&) const = default;
};

struct PlantParams {
    TurbineParams   turbine;
    GeneratorParams generator;

    bool operator==(const PlantParams&) const = default;
};

/// Steady-state electrical operating point for a constant steam flow.
struct ElectricalReport {
    double omega1     = 0.0;  ///< turbine speed, rad/s
    double v_out      = 0.0;  ///< V
    double i_a        = 0.0;  ///< A
    double e_g        = 0.0;  ///< V
    double p_out      = 0.0;  ///< W
    double p_in       = 0.0;  ///< W
    double efficiency = 0.0;  ///< percent
};

/// Which numeric plant model to use downstream.
enum class Preset {
    Exact,         ///< gain n*R_L*k1*tau_T from the parameters
    PaperRounded,  ///< 18/(s^2 + 2.5 s + 1)
};

Preset           parse_preset(std::string_view name);
std::string_view to_string(Preset preset);

/// tau_T = 2 s, k1 = 4, n = 4, L_f = 3 H, R_f = 2 ohm, L_a = 4 H, R_a = 4 ohm, R_L = 8 ohm.
PlantParams reference_params();

/// Throws InvalidInput naming the first offending field (e.g. "generator.r_l").
void validate(const PlantParams& p);

/// omega1(s)/F_in(s) = tau/(tau s + 1)
TransferFunction turbine_tf(const TurbineParams& p);

/// V(s)/omega1(s) = n R_L k1 / ((L_f + L_a) s + R_f + R_a + R_L)
TransferFunction generator_tf(const GeneratorParams& p);

/// Steam flow to terminal voltage: turbine_tf in series with generator_tf.
TransferFunction plant_tf(const PlantParams& p);

/// The rounded model 18/(s^2 + 2.5 s + 1).
TransferFunction paper_rounded_tf();

/// plant_tf for Preset::Exact, paper_rounded_tf for Preset::PaperRounded.
TransferFunction plant_tf(const PlantParams& p, Preset preset);

/// Closed-form electrical chain at steady state for steam flow f_in (g/s).
ElectricalReport steady_state_report(const PlantParams& p, double f_in);

}  // namespace regforge::plant
