#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "regforge/cli/report.hpp"
#include "regforge/cli/scenario.hpp"
#include "regforge/observer.hpp"
#include "regforge/plant.hpp"
#include "regforge/sim.hpp"

namespace regforge::cli {

enum ExitCode : int {
    kExitSuccess    = 0,
    kExitValidation = 1,
    kExitNumerical  = 2,
    kExitIo         = 3,
};

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

/// Plant of a scenario: physical parameters (when known) plus the model actually simulated.
struct PlantModel {
    std::optional<plant::PlantParams> params;
    std::optional<plant::Preset>      preset;
    TransferFunction                  tf;
    StateSpaceModel                   ss;
};

PlantModel build_plant(const Scenario& sc, std::optional<plant::Preset> preset_override = std::nullopt);

struct Overrides {
    std::optional<plant::Preset>        preset;
    std::optional<observer::Convention> convention;
};

/// Result of running one scenario through the library.
struct Execution {
    RunReport                           report;
    sim::TimeSeries                     series;
    std::optional<sim::ElectricalTrace> electrical;
};

/// Gains, controller realization and every stability verdict. Needs an lqr or observer controller.
RunReport synthesize(const Scenario& sc, const Overrides& ov = {});

/// Open- or closed-loop simulation with metrics, electrical report and discrepancy warnings.
Execution execute(const Scenario& sc, const Overrides& ov = {});

/// Full command-line entry point. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regforge::cli
