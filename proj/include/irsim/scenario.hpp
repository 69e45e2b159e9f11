#ifndef IRSIM_SCENARIO_HPP
#define IRSIM_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsim/geometry.hpp"
#include "irsim/modulation.hpp"
#include "irsim/propagation.hpp"
#include "irsim/synthesis.hpp"
#include "irsim/timevarying.hpp"

namespace irsim {

/// All semantic violations found in a configuration, not just the first.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

  private:
    std::vector<std::string> violations_;
};

enum class ScenarioKind { Steer, Focus, Modulate, TimeVary, Bounds };

const char* to_string(ScenarioKind kind);

/// Uniform angular grid bounds, degrees (phi_min is exclusive when it
/// equals -180 so the azimuth stays inside (-180, 180]).
struct AngularGridConfig {
    double theta_min_deg = 0.0;
    double theta_max_deg = 90.0;
    double theta_step_deg = 1.0;
    double phi_min_deg = -180.0;
    double phi_max_deg = 180.0;
    double phi_step_deg = 1.0;

    ObservationGrid build() const;
};

struct DepthAxisConfig {
    double min_m = 0.1;
    double max_m = 1.5;
    double step_m = 0.001;

    std::vector<double> build() const;
};

struct TimeVaryConfig {
    double mod_frequency_hz = 0.0;
    std::vector<int> harmonics{1, 3};
    enum class DelayMode { Synchronized, Target, Explicit };
    DelayMode delay_mode = DelayMode::Synchronized;
    DirectionAngles target{};  // DelayMode::Target
    int target_harmonic = 1;   // DelayMode::Target
    std::vector<double> delay_matrix; // DelayMode::Explicit, row-major
    AngularGridConfig grid{};
    DirectionAngles spectrum_direction{};
    int spectrum_k_max = 5;
    enum class Display { Absolute, InvariantPeak, PerHarmonic };
    Display display = Display::Absolute;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Bounds;
    PropagationContext ctx;
    ApertureGrid aperture;
    std::optional<SourceModel> tag; // steer/focus/modulate need it
    std::uint64_t seed = 0;

    // steer
    DirectionAngles steer_direction{};
    AngularGridConfig steer_grid{0.0, 90.0, 0.5, -180.0, 180.0, 0.5};

    // focus
    FocalSpec focus{};
    DepthAxisConfig focus_depth_axis{};

    // modulate
    ReceiverSpec receiver{};
    std::string bits;
    DepthAxisConfig modulate_depth_axis{0.1, 1.5, 0.01};

    // timevary
    TimeVaryConfig timevary{};
};

struct ParsedConfig {
    ScenarioConfig config;
    std::vector<std::string> warnings;
};

/// Parses and validates a JSON scenario configuration. Unknown keys are
/// rejected; every violation is reported (thrown as ConfigError). Syntax
/// errors carry the line number.
ParsedConfig parse_config(const std::string& text);

/// Convenience: read the file then parse.
ParsedConfig parse_config_file(const std::string& path);

struct ScenarioResult {
    std::string summary;
    std::vector<std::string> files; // paths written, relative to out_dir
    std::vector<std::string> warnings;
};

/// Runs one scenario and writes its output files under out_dir.
/// Deterministic: identical config and seed produce byte-identical files.
ScenarioResult run_scenario(const ScenarioConfig& config, const std::string& out_dir);

} // namespace irsim

#endif
