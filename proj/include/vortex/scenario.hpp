#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortex/analytic.hpp"
#include "vortex/core.hpp"
#include "vortex/integrator.hpp"
#include "vortex/reduced.hpp"

#include <json.hpp>

namespace vortex {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoOracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
    std::string kind;  // polygon | collinear | two_rings | two_rings_center | three_vortex
    // polygon
    int n = 0;
    double r0 = 0.0;
    double theta0 = 0.0;
    Vec2 center;
    int winding = 1;
    // collinear
    std::vector<double> offsets;
    std::vector<int> windings;
    double angle = 0.0;
    // two_rings / two_rings_center
    RingVariant variant = RingVariant::AlignedSame;
    double a1 = 0.0;
    double a2 = 0.0;
    // three_vortex: apex (vortex 1) at the origin, arms of length d12 and d23
    // separated by the angle gamma (gamma = pi gives collinear data)
    double d12 = 0.0;
    double d23 = 0.0;
    double gamma = 0.0;
};

struct SamplingSpec {
    enum class Mode { Uniform, Log };
    Mode mode = Mode::Uniform;
    int points = 200;      // log mode
    double t_start = 0.01; // log mode: first sample time
};

/// One batch run: either explicit vortices or a generator, plus integrator
/// controls, a sampling rule, and output file names.
struct ScenarioSpec {
    std::optional<std::vector<std::pair<Vec2, int>>> vortices;
    std::optional<GeneratorSpec> generator;
    StepControl control;
    SamplingSpec sampling;
    std::string trajectory_csv = "trajectory.csv";
    std::string events_json = "events.json";
};

ScenarioSpec parse_scenario_json(const nlohmann::json& doc);
ScenarioSpec load_scenario_file(const std::string& path);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);

/// Build the initial configuration (validates: throws SpecError or
/// DegenerateConfigurationError with the offending pair named).
VortexConfiguration build_configuration(const ScenarioSpec& spec);

/// Integrate per the spec's controls and sampling rule.
Trajectory run_scenario(const ScenarioSpec& spec);

struct OracleComparison {
    std::string oracle;          // pair | dipole | polygon | ring variant name
    double max_rel_deviation = 0.0;
    double t_compared = 0.0;     // end of the comparison window
    int samples = 0;
};

/// Compare the integrated trajectory against the registered closed form for
/// this scenario (throws NoOracleError when none applies). Deviation is the
/// worst position error relative to the configuration scale at that time.
OracleComparison compare_with_oracle(const ScenarioSpec& spec);

struct FigureSeries {
    int figure = 0;
    int n = 0;
    RingTrajectory traj;
};

/// Data behind the two-ring figures: rho1(t), rho2(t) for n = 2..5 with
/// rho1(0)=1, rho2(0)=4. Figure 2: aligned same-sign rings; 3: staggered
/// opposite rings; 4: center-opposite aligned rings; 5: center and outer ring
/// opposite to the inner ring.
std::vector<FigureSeries> figure_data(int figure_id);

}  // namespace vortex
