#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "regforge/lti.hpp"
#include "regforge/plant.hpp"

namespace regforge::sim {

enum class InputKind { Step, Constant, Zero };

InputKind        parse_input_kind(std::string_view name);
std::string_view to_string(InputKind kind);

struct SimConfig {
    double    dt              = 1e-3;  ///< s
    double    duration        = 20.0;  ///< s
    InputKind input_kind      = InputKind::Step;
    double    input_amplitude = 1.0;
    /// Any |state| or |output| above this ends the run with the divergence flag set.
    double divergence_limit = 1e9;

    /// Throws InvalidInput unless dt > 0, duration >= dt and duration/dt <= 1e7.
    void validate() const;
};

/// Uniformly sampled trajectory. states[k] is x(times[k]) when recorded.
struct TimeSeries {
    std::vector<double>              times;
    std::vector<double>              inputs;
    std::vector<double>              outputs;
    std::vector<std::vector<double>> states;
    bool                             diverged = false;

    std::size_t size() const noexcept { return times.size(); }
};

inline constexpr double kSettlingBand = 0.02;

struct StepMetrics {
    double                steady_state  = 0.0;  ///< mean of the final 5 % of samples
    double                overshoot_pct = 0.0;
    std::optional<double> settling_time;        ///< empty when the response never settles in the run
    std::optional<double> rise_time;            ///< 10 % to 90 % of steady state
    double                band      = kSettlingBand;
    bool                  degenerate = false;   ///< steady state of zero; all metrics zero
};

/// Classical RK4 with x(0) = 0 and a piecewise-constant input. SISO only.
TimeSeries simulate(const StateSpaceModel& ss, const SimConfig& cfg, bool record_states = true);

/// Needs at least 100 samples.
StepMetrics step_metrics(const TimeSeries& ts, double band = kSettlingBand);

struct ElectricalTrace {
    std::vector<double> times;
    std::vector<double> i_a;
    std::vector<double> e_g;
    std::vector<double> p_out;
    std::vector<double> p_in;
};

/// Armature current, emf and power from a terminal-voltage trajectory; di_a/dt by backward difference.
ElectricalTrace electrical_trace(const plant::PlantParams& p, const TimeSeries& v_out);

struct ClosedLoopRun {
    StateSpaceModel loop;
    TimeSeries      series;
    StepMetrics     metrics;
    bool            hurwitz = false;
};

/// Steps an already-assembled loop (input r, output y) with the given reference.
ClosedLoopRun run_loop(const StateSpaceModel& loop, double reference, SimConfig cfg);

/// Unity negative feedback loop with the controller in the forward path, stepped to reference.
ClosedLoopRun closed_loop_step(const StateSpaceModel& plant, const StateSpaceModel& controller, double reference,
                               const SimConfig& cfg);

}  // namespace regforge::sim
