#pragma once

#include <optional>
#include <vector>

#include "vortex/core.hpp"

namespace vortex {

/// Controls for one adaptive integration run. Fields with initializers are
/// the documented defaults; t_end defaults to 1.
struct StepControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double dt_init = 1e-4;
    double dt_min = 1e-12;   // floor for the error-controlled step proposal
    double dt_max = 1.0;
    double collision_eps = 1e-6;  // d_min threshold that ends a run as a collision
    double t_end = 1.0;
    double sample_interval = 0.01;
    long max_steps = 2000000;

    void validate() const;  // throws std::invalid_argument
};

struct CollisionEvent {
    double t_collision = 0.0;
    // Partition of vortex indices by single linkage with radius 2*eps at
    // t_collision; each cluster sorted, clusters ordered by smallest member.
    std::vector<std::vector<int>> clusters;
    // Centroid of every cluster (parallel to clusters).
    std::vector<Vec2> centroids;

    /// Centroids of the clusters of size >= 2 (the collision locations).
    std::vector<Vec2> locations() const;
};

enum class TerminalKind { ReachedEnd, Collision, StepFloor, StepBudget };

struct TerminalEvent {
    TerminalKind kind = TerminalKind::ReachedEnd;
    double t = 0.0;
    std::optional<CollisionEvent> collision;  // engaged iff kind == Collision
};

const char* terminal_kind_name(TerminalKind kind);

/// Time-stamped solution samples: states at 0, every multiple of
/// sample_interval, and the terminal time.
struct Trajectory {
    std::vector<double> times;
    std::vector<VortexConfiguration> states;
    TerminalEvent terminal;

    const VortexConfiguration& final_state() const { return states.back(); }
};

/// Integrate the vortex system from `initial` with an embedded Runge-Kutta
/// 5(4) pair and PI step control. Stops at t_end, at a d_min < collision_eps
/// crossing (refined by bisection), when the controller's step proposal falls
/// below dt_min, or after max_steps.
Trajectory integrate(const VortexConfiguration& initial, const StepControl& control);

/// Same, but sampling at an explicit increasing time grid (e.g. log-spaced for
/// slope estimation) instead of multiples of sample_interval.
Trajectory integrate(const VortexConfiguration& initial, const StepControl& control,
                     std::span<const double> sample_times);

class NoCrossingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Locate the time where d_min crosses eps inside (t_before, t_after], given the
/// state at t_before with d_min(t_before) >= eps. Bisection until the bracket is
/// narrower than 1e-9 * max(1, t). Throws NoCrossingError if d_min stays >= eps.
double refine_collision_time(const VortexConfiguration& before, double t_before,
                             double t_after, double eps, const StepControl& control);

/// Single-linkage partition with linking radius 2*eps. Requires at least one
/// pair within eps.
std::vector<std::vector<int>> classify_clusters(const VortexConfiguration& at_collision,
                                                double eps);

std::vector<Vec2> cluster_centroids(const VortexConfiguration& config,
                                    const std::vector<std::vector<int>>& clusters);

namespace detail {

/// Advance a flat state from t0 to t1 with error-controlled steps and the
/// d_min^2 step cap, ignoring collision thresholds. Used by the bisection
/// refinement and oracle comparisons.
void advance_raw(std::vector<double>& xy, std::span<const int> m, double t0, double t1,
                 double rel_tol, double abs_tol, double dt_max);

}  // namespace detail

}  // namespace vortex
