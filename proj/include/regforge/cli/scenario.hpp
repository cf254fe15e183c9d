#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regforge/lti.hpp"
#include "regforge/observer.hpp"
#include "regforge/plant.hpp"
#include "regforge/sim.hpp"

namespace regforge::cli {

/**
 * Flat `key = value` text, one pair per line, `#` starts a comment. Keys use dotted
 * sections (`generator.r_l`). Duplicate keys are rejected.
 */
class KeyValueFile {
   public:
    static KeyValueFile parse(std::string_view text, std::string_view origin = "<input>");
    static KeyValueFile load(const std::string& path);

    bool                       has(const std::string& key) const { return values_.contains(key); }
    bool                       has_prefix(std::string_view prefix) const;
    const std::string&         get(const std::string& key) const;
    std::optional<std::string> find(const std::string& key) const;

    double              number(const std::string& key) const;
    double              number_or(const std::string& key, double fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    /// Rows separated by ';', entries by whitespace or ','.
    Matrix matrix(const std::string& key) const;

    const std::map<std::string, std::string>& values() const noexcept { return values_; }
    const std::string&                        origin() const noexcept { return origin_; }

   private:
    std::map<std::string, std::string> values_;
    std::string                        origin_;
};

double              parse_number(std::string_view text, std::string_view what);
std::vector<double> parse_numbers(std::string_view text, std::string_view what);

/// Reads every turbine.* and generator.* parameter; a missing or nonpositive one is an error naming it.
plant::PlantParams parse_plant_params(const KeyValueFile& kv);

enum class ControllerKind { None, Lqr, Observer, StateSpace };

struct ControllerSpec {
    ControllerKind                     kind = ControllerKind::None;
    std::vector<double>                q_diag;
    double                             r = 1.0;
    std::optional<Matrix>              k;               ///< overrides LQR synthesis when given
    std::optional<Matrix>              h;
    std::vector<double>                observer_poles;  ///< used to place H when h is absent
    observer::Convention               convention = observer::Convention::StandardLuenberger;
    std::optional<StateSpaceModel>     model;           ///< explicit controller
    std::optional<double>              prescale;        ///< empty means automatic
};

enum class Artifact { Csv, Svg, Report };

struct Scenario {
    std::string                       name = "scenario";
    std::optional<plant::PlantParams> params;        ///< physical plant, when not given explicitly
    plant::Preset                     preset = plant::Preset::Exact;
    std::optional<TransferFunction>   explicit_tf;
    std::optional<StateSpaceModel>    explicit_ss;
    ControllerSpec                    controller;
    sim::SimConfig                    sim;
    std::optional<double>             reference;
    std::vector<Artifact>             outputs{Artifact::Csv, Artifact::Svg, Artifact::Report};

    bool wants(Artifact a) const;
};

Scenario parse_scenario(const KeyValueFile& kv);

/// Names of the scenarios compiled into the tool.
std::vector<std::string> builtin_scenario_names();
/// Text of a built-in scenario, or nullopt.
std::optional<std::string> builtin_scenario(std::string_view name);

/// Built-in name or path to a scenario file.
Scenario load_scenario(const std::string& name_or_path);

}  // namespace regforge::cli
