#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regforge/lti.hpp"
#include "regforge/plant.hpp"
#include "regforge/riccati.hpp"
#include "regforge/sim.hpp"

namespace regforge::cli {

/// Values as printed in the source publication. Only ever shown next to a computed value.
namespace published {
inline constexpr double kOpenLoopVoltage   = 90.0;    ///< V at 5 g/s
inline constexpr double kOutputPower       = 1000.0;  ///< W
inline constexpr double kInputPower        = 1300.0;  ///< W
inline constexpr double kEfficiency        = 76.92;   ///< percent
inline constexpr double kSteamFlow         = 5.0;     ///< g/s
inline constexpr double kReference         = 220.0;   ///< V
inline constexpr double kObserverSettling  = 7.0;     ///< s
}  // namespace published

struct StabilityVerdict {
    std::string subject;
    Polynomial  char_poly;
    bool        hurwitz = false;
};

struct RunSummary {
    std::string           label;
    sim::StepMetrics      metrics;
    bool                  diverged = false;
    std::optional<bool>   hurwitz;
    std::optional<double> prescale;
    double                final_value = 0.0;
    double                final_time  = 0.0;
};

struct RunReport {
    std::string                                           scenario;
    std::vector<std::pair<std::string, TransferFunction>> transfer_functions;
    std::optional<StateSpaceModel>                        plant_ss;
    std::optional<double>                                 dc_gain;
    std::optional<Matrix>                                 k;
    std::optional<Matrix>                                 h;
    std::optional<riccati::RiccatiSolution>               care;
    std::optional<StateSpaceModel>                        controller;
    std::optional<std::string>                            convention;
    std::vector<StabilityVerdict>                         verdicts;
    std::vector<RunSummary>                               runs;
    std::optional<plant::ElectricalReport>                electrical;
    std::vector<std::string>                              notes;
    std::vector<std::string>                              warnings;
    std::vector<std::string>                              artifacts;

    bool any_diverged() const;
};

/// "WARNING: ..." lines comparing a computed steady state against the published figures.
std::vector<std::string> electrical_discrepancies(const plant::ElectricalReport& computed);

std::string render_text(const RunReport& report);
std::string render_json(const RunReport& report);

/// "%.<digits>f"
std::string fixed(double v, int digits = 4);

}  // namespace regforge::cli
