#pragma once

#include <optional>
#include <span>
#include <utility>

#include "vortex/core.hpp"
#include "vortex/integrator.hpp"
#include "vortex/reduced.hpp"

namespace vortex {

struct DriftSample {
    double value = 0.0;  // nonnegative worst-case deviation
    double time = 0.0;   // sample time where it was attained
};

/// Worst-case first-integral drift, mass-center displacement, and positive
/// energy increment over a trajectory's samples.
struct InvariantReport {
    DriftSample h1;
    DriftSample h2;
    DriftSample h3;
    DriftSample mass_center;
    DriftSample energy_increase;  // max W(t_{k+1}) - W(t_k) above zero
};

InvariantReport invariant_report(const Trajectory& traj);

/// First sample index where d_min drops by more than 1e-10 from the running
/// minimum's precursor; returns (time, drop) or absent when monotone.
std::optional<std::pair<double, double>> dmin_monotone_check(const Trajectory& traj);

/// First interior sample where d_min turns from decreasing to increasing
/// (time, value). For N >= 5 non-collinear data d_min need not be monotone
/// from t = 0; this reports the observed turning point without asserting one.
std::optional<std::pair<double, double>> dmin_first_local_minimum(const Trajectory& traj);

/// Distance from a same-sign 3-vortex state (mass center at the origin) to the
/// family of rotated/scaled unit equilateral triangles: inf over r > 0 and
/// theta of ||X - r Q(theta) E||. Vortices are matched to reference vertices in
/// polar-angle order; theta optimized on a 720-point grid refined by
/// golden-section.
double orbital_distance(const VortexConfiguration& config);

/// Same distance but with the reference rotation pinned to the first vortex's
/// polar angle (the gauge used to derive the P(phi) identity); only r is
/// optimized. Satisfies d_gauge^2 = (12t + h3_0)(3 - P(phi))/3 along flows.
double orbital_distance_reference_gauge(const VortexConfiguration& config);

/// P(phi1, phi2) of the three-vortex phase reduction; equals 3 exactly at the
/// equilateral gaps (2pi/3, 2pi/3).
double phase_p_value(double phi1, double phi2);

/// Evaluate the gauge distance through the identity
/// d^2 = (12 t + h3_0)(3 - P)/3 from the state's angular gaps.
double equilateral_distance_formula(const VortexConfiguration& config, double t, double h3_0);

/// Label-continuous phase states along a 3-vortex trajectory: vortices keep
/// their t=0 angular order and per-vortex angles unwrap continuously between
/// samples, so the gaps never jump when the configuration rotates through the
/// atan2 branch cut (a sorted per-sample measurement would relabel there).
std::vector<PhaseState> phase_trajectory(const Trajectory& traj, double h3_0);

enum class ThreeVortexCase { AllThreeCollide, PairCollides, NoCollision };

struct PatternVerdict {
    ThreeVortexCase kind = ThreeVortexCase::NoCollision;
    std::optional<std::pair<int, int>> pair;    // colliding pair indices
    std::optional<double> t_collision;
    std::optional<double> t_upper_bound;        // H1^0 / 12, present iff collision
    std::optional<Vec2> collision_location;
};

/// Classify the collision pattern of a 3-vortex system with one winding sign
/// in the minority (M0 = -1): integrates the system and reports whether all
/// three collide (equidistant initial data) or only the closer pair does.
PatternVerdict classify_three_vortex(const VortexConfiguration& config,
                                     std::optional<StepControl> control = std::nullopt);

/// Least-squares slope of value vs time over the trailing window_fraction of
/// samples (at least 10 samples required there).
double estimate_slope(std::span<const double> times, std::span<const double> values,
                      double window_fraction = 0.5);

}  // namespace vortex
