#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "vortex/core.hpp"

namespace vortex {

// ---------------------------------------------------------------------------
// Collinear invariant manifold: x_j(t) = origin + a_j(t) * direction.

struct CollinearReduction {
    Vec2 origin;
    Vec2 direction;  // unit, first nonzero component nonnegative
    std::vector<double> offsets;
};

/// Fit the least-squares line (principal axis of the centered second-moment
/// matrix); returns the reduction iff every point lies within tol of it.
/// Default tol is 1e-9 times the configuration diameter.
std::optional<CollinearReduction> detect_collinear(const VortexConfiguration& config,
                                                   std::optional<double> tol = std::nullopt);

/// Scalar line dynamics: a_j' = 2 m_j sum_{k != j} m_k / (a_j - a_k).
std::vector<double> collinear_rhs(std::span<const double> offsets,
                                  std::span<const WindingNumber> windings);

VortexConfiguration lift_collinear(const CollinearReduction& reduction,
                                   std::span<const WindingNumber> windings);

// ---------------------------------------------------------------------------
// Two-ring radial systems: n vortices on each of two concentric rings,
// optionally with one more vortex at the center. rho1, rho2 are squared radii.

enum class RingVariant {
    AlignedSame,                    // both rings same sign, same angles
    StaggeredSame,                  // both rings same sign, outer offset by pi/n
    StaggeredOpposite,              // opposite-sign rings, outer offset by pi/n
    CenterAlignedSame,              // + center vortex, all same sign
    CenterStaggeredSame,            //
    CenterAlignedOppositeCenter,    // rings same sign, center opposite
    CenterStaggeredOppositeCenter,  //
    CenterStaggeredOppositeRing,    // center and outer ring opposite to inner
};

constexpr std::array<RingVariant, 8> kAllRingVariants = {
    RingVariant::AlignedSame,
    RingVariant::StaggeredSame,
    RingVariant::StaggeredOpposite,
    RingVariant::CenterAlignedSame,
    RingVariant::CenterStaggeredSame,
    RingVariant::CenterAlignedOppositeCenter,
    RingVariant::CenterStaggeredOppositeCenter,
    RingVariant::CenterStaggeredOppositeRing,
};

const char* ring_variant_name(RingVariant v);
std::optional<RingVariant> ring_variant_from_name(std::string_view name);
bool ring_variant_has_center(RingVariant v);
bool ring_variant_staggered(RingVariant v);
/// True when the ring-ring kernel carries the (rho2^{n/2} - rho1^{n/2})
/// denominator, which vanishes at equal radii.
bool ring_variant_difference_kernel(RingVariant v);
/// rho1' + rho2' for the variant (exact constant).
double ring_sum_constant(RingVariant v, int n);

struct RingSystem {
    RingVariant variant = RingVariant::AlignedSame;
    int n = 2;
    double rho1 = 0.0;
    double rho2 = 0.0;

    void validate() const;  // n >= 2, 0 < rho1 < rho2
};

/// Right-hand side (rho1', rho2') of the reduced radial system.
Vec2 ring_rhs(const RingSystem& sys);

/// Closed form of sum_{j=1}^{n} (x^2-1)/(x^2+1-2x cos(theta_n^1 - theta_n^j [+ pi/n]))
/// for x > 1: n(x^n+1)/(x^n-1) aligned, n(x^n-1)/(x^n+1) staggered.
double ring_kernel_sum(double x, int n, bool staggered);

/// Winding pattern of the lifted configuration (inner ring first, then outer,
/// then the center vortex when present), with the inner ring at +1.
std::vector<WindingNumber> ring_windings(RingVariant v, int n);

/// Build the full 2n (or 2n+1) vortex configuration for the ring ansatz.
VortexConfiguration lift_ring(const RingSystem& sys, double theta0 = 0.0, Vec2 center = {});

/// Squared ring radii measured back from a full configuration in lift_ring's
/// vortex order.
Vec2 ring_radii_sq(const VortexConfiguration& config, RingVariant v, int n,
                   Vec2 center = {});

struct RingTrajectory {
    std::vector<double> times;
    std::vector<double> rho1;
    std::vector<double> rho2;
    bool reached_floor = false;  // rho1 hit the floor before the last sample time
    double t_final = 0.0;        // last integrated time (floor crossing when reached_floor)
};

struct RingIntegrateOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double rho_floor = 1e-10;  // stop when rho1 (or the kernel denominator) falls below
    double dt_max = 1.0;
};

/// Integrate the reduced system, sampling at the given increasing times.
/// Stops early (reached_floor) when rho1 crosses rho_floor, with t_final
/// bisected onto the crossing.
RingTrajectory integrate_ring(const RingSystem& initial, std::span<const double> sample_times,
                              const RingIntegrateOptions& options = {});

std::vector<double> uniform_times(double t0, double t1, int count);
std::vector<double> log_spaced_times(double t0, double t1, int count);

// ---------------------------------------------------------------------------
// Three-vortex side/angle system and the phase variables of the same-sign case.

struct TriangleState {
    double d12 = 0.0, d13 = 0.0, d23 = 0.0;
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0;  // interior angles, sum pi
    double area = 0.0;
};

/// Sides, interior angles (law of cosines) and area of the triangle spanned by
/// a 3-vortex configuration. Throws on (near-)collinear input.
TriangleState triangle_state(const VortexConfiguration& config);

/// Derivatives (d12', d13', d23', theta1', theta2', theta3') for three
/// same-sign vortices.
std::array<double, 6> triangle_rhs_same_sign(const TriangleState& s);

/// Same for windings (+1, -1, +1). Sign contracts: theta1' < 0, theta2' > 0,
/// theta3' < 0 whenever the area is positive.
std::array<double, 6> triangle_rhs_mixed(const TriangleState& s);

struct PhaseState {
    double phi1 = 0.0;  // angular gaps between consecutive vortices
    double phi2 = 0.0;
    double s = 0.0;  // rescaled log-time
    Vec2 psi;        // (phi1, phi2) - (2pi/3, 2pi/3)
};

/// Phase variables of a same-sign 3-vortex state with mass center at the
/// origin (within 1e-8): polar angles sorted ascending, gaps phi1, phi2, and
/// s = ln((12t + h3_0)/h3_0)/4.
PhaseState phase_state(const VortexConfiguration& config, double t, double h3_0);

}  // namespace vortex
