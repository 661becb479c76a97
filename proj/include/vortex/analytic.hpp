#pragma once

#include <optional>
#include <vector>

#include "vortex/core.hpp"
#include "vortex/reduced.hpp"

namespace vortex {

enum class ClosedFormKind { Pair, Dipole, Polygon, RingN2 };

/// Exact solutions used as ground truth against the numerical integrator:
/// the two-vortex pair/dipole, the same-sign regular polygon, and the n=2
/// two-ring radial closed forms.
class ClosedFormSolution {
public:
    static ClosedFormSolution pair(Vec2 x1, Vec2 x2);
    static ClosedFormSolution dipole(Vec2 x1, Vec2 x2);
    static ClosedFormSolution polygon(int n, double r0, double theta0, Vec2 center = {});
    static ClosedFormSolution ring_n2(RingVariant variant, double a1, double a2);

    ClosedFormKind kind() const { return kind_; }
    std::optional<double> horizon() const { return horizon_; }

    /// Full vortex configuration at time t (0 <= t < horizon).
    VortexConfiguration configuration(double t) const;

    double pair_separation(double t) const;           // Pair/Dipole
    Vec2 pair_midpoint() const;                       // Pair/Dipole
    double polygon_radius(double t) const;            // Polygon
    Vec2 ring_rho(double t) const;                    // RingN2: (rho1, rho2)
    RingVariant ring_variant() const;                 // RingN2

private:
    ClosedFormSolution() = default;
    void check_time(double t) const;

    ClosedFormKind kind_ = ClosedFormKind::Pair;
    std::optional<double> horizon_;
    // Pair/Dipole
    Vec2 x1_, x2_;
    // Polygon
    int n_ = 0;
    double r0_ = 0.0, theta0_ = 0.0;
    Vec2 center_;
    // RingN2
    RingVariant variant_ = RingVariant::AlignedSame;
    double a1_ = 0.0, a2_ = 0.0, c1_ = 0.0, c2_ = 0.0;
};

/// Convenience per the two-vortex dichotomy: same sign -> expanding pair,
/// opposite signs -> dipole with horizon d0^2/8 and collision at the midpoint.
ClosedFormSolution pair_dipole_solution(Vec2 x1, Vec2 x2, bool same_sign);

ClosedFormSolution polygon_solution(int n, double r0, double theta0, Vec2 center = {});
ClosedFormSolution ring_n2_closed_form(RingVariant variant, double a1, double a2);

/// Large-time slopes (alpha, beta) of the two-ring systems: rho1 ~ alpha t,
/// rho2 ~ beta t with alpha + beta the family sum constant and the kernel
/// equation beta - alpha = 4n (beta^{n/2} +- alpha^{n/2})/(beta^{n/2} -+ alpha^{n/2}).
/// Families 1..6 cover the aligned/staggered two-ring setups with and
/// without a center vortex (see slope_family_variant).
struct SlopePair {
    double alpha = 0.0;
    double beta = 0.0;
    int n = 0;
    int family = 0;
    // True when the only root is alpha == beta == sum/2 (the rings expand at a
    // common rate; happens for the staggered families at small n).
    bool degenerate = false;
};

class NoSlopeRootError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

double slope_family_sum(int family, int n);
bool slope_family_staggered(int family);
RingVariant slope_family_variant(int family);

/// Solve the slope equations by bisection on alpha in (0, sum/2); residual
/// below 1e-12 at the root. Throws NoSlopeRootError when no root with
/// alpha > 0 exists (families 5/6 at n=3, where rho1 stays bounded instead).
SlopePair solve_asymptotic_slopes(int n, int family);

/// Residual of the kernel equation at the pair (the sum equation holds by
/// construction).
double slope_residual(const SlopePair& p);

/// N=4 equilibrium: one m=-1 vortex at the origin and three m=+1 vortices on
/// the unit circle at mutual angle 2pi/3. The velocity field vanishes there.
VortexConfiguration build_equilibrium_n4();

struct EquilibriumWindings {
    int n_plus_high = 0;  // (N + sqrt(N)) / 2
    int n_plus_low = 0;   // (N - sqrt(N)) / 2
};

/// The winding splits an equilibrium must have: present iff n >= 4 is a
/// perfect square, with N+ = (N +- sqrt(N)) / 2.
std::optional<EquilibriumWindings> admissible_equilibrium_windings(int n);

struct Collinear3Asymptote {
    int middle_index = 0;       // index of the offset that converges
    double middle_limit = 0.0;  // mean of the initial offsets
};

/// Large-time behaviour of three same-sign collinear vortices: the middle one
/// converges to the mass center, the outer two escape to -/+ infinity.
/// Throws for mixed signs (those collide instead).
Collinear3Asymptote collinear3_asymptote(std::span<const double> offsets, bool same_sign);

struct Ring3CenterLimits {
    double rho1_limit = 0.0;
    double rho2_slope = 12.0;
};

/// n=3 limits of the center-opposite two-ring systems:
/// aligned (CenterAlignedOppositeCenter): rho1 -> (a1 a2/(a1+a2))^2;
/// staggered (CenterStaggeredOppositeCenter): rho1 -> (a1 a2/(a2-a1))^2;
/// both with rho2 ~ 12 t.
Ring3CenterLimits ring3_center_limits(double a1, double a2, RingVariant variant);

}  // namespace vortex
