#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vortex/analysis.hpp"
#include "vortex/batch.hpp"
#include "vortex/integrator.hpp"
#include "vortex/reduced.hpp"

using namespace vortex;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute-force trigonometric kernel sum (oracle for the closed form).
double kernel_sum_direct(double x, int n, bool staggered) {
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double ang = 2.0 * kPi * (j - 1) / n + (staggered ? kPi / n : 0.0);
        sum += (x * x - 1.0) / (x * x + 1.0 - 2.0 * x * std::cos(ang));
    }
    return sum;
}

StepControl tight(double t_end) {
    StepControl c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-14;
    c.t_end = t_end;
    c.sample_interval = std::max(t_end / 20.0, 1e-3);
    return c;
}

}  // namespace

TEST_SUITE_BEGIN("reduced");

TEST_CASE("detect_collinear examples") {
    const VortexConfiguration on_x({{-1, 0}, {0, 0}, {2, 0}}, uniform_windings(3));
    const auto red = detect_collinear(on_x);
    REQUIRE(red.has_value());
    CHECK(red->direction.x == doctest::Approx(1.0));
    CHECK(std::abs(red->direction.y) < 1e-12);
    // offsets relative to the centroid (1/3, 0)
    CHECK(red->offsets[0] == doctest::Approx(-4.0 / 3.0));
    CHECK(red->offsets[1] == doctest::Approx(-1.0 / 3.0));
    CHECK(red->offsets[2] == doctest::Approx(5.0 / 3.0));

    // equilateral triangle is not collinear
    std::vector<Vec2> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    CHECK(!detect_collinear({tri, uniform_windings(3)}).has_value());

    // points on y = x
    const VortexConfiguration diag({{-1, -1}, {0.5, 0.5}, {2, 2}}, uniform_windings(3));
    const auto red_diag = detect_collinear(diag);
    REQUIRE(red_diag.has_value());
    CHECK(red_diag->direction.x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(red_diag->direction.y == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    // reconstruction: origin + a_j e reproduces the points
    const auto lifted = lift_collinear(*red_diag, diag.windings());
    for (int j = 0; j < 3; ++j)
        CHECK(norm(lifted.position(j) - diag.position(j)) < 1e-10);
}

TEST_CASE("collinear_rhs examples and lift consistency") {
    const std::vector<double> sym{-1.0, 0.0, 1.0};
    const auto same = collinear_rhs(sym, uniform_windings(3));
    CHECK(same[0] == doctest::Approx(-3.0));
    CHECK(same[1] == doctest::Approx(0.0));
    CHECK(same[2] == doctest::Approx(3.0));

    const auto mixed = collinear_rhs(sym, make_windings({1, -1, 1}));
    CHECK(mixed[0] == doctest::Approx(1.0));
    CHECK(mixed[1] == doctest::Approx(0.0));
    CHECK(mixed[2] == doctest::Approx(-1.0));

    const std::vector<double> pair{-0.7, 0.7};
    const auto v2 = collinear_rhs(pair, uniform_windings(2));
    CHECK(v2[0] == doctest::Approx(-1.0 / 0.7));
    CHECK(v2[1] == doctest::Approx(1.0 / 0.7));

    // lifting to 2D matches the full velocity field
    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto config = random_collinear_config(rng, rng.uniform_int(2, 6),
                                                    WindingMode::Mixed);
        const auto red = detect_collinear(config);
        REQUIRE(red.has_value());
        const auto scalar = collinear_rhs(red->offsets, config.windings());
        const auto full = velocity_field(lift_collinear(*red, config.windings()));
        for (size_t j = 0; j < scalar.size(); ++j) {
            const Vec2 lifted_v = scalar[j] * red->direction;
            CHECK(norm(lifted_v - full[j]) < 1e-10 * std::max(1.0, std::abs(scalar[j])));
        }
    }

    const std::vector<double> coincident{0.0, 0.0};
    CHECK_THROWS_AS(collinear_rhs(coincident, uniform_windings(2)),
                    DegenerateConfigurationError);
}

TEST_CASE("ring_rhs examples") {
    // AlignedSame n=2 at (1,4): (-2/3, 38/3)
    const Vec2 r1 = ring_rhs({RingVariant::AlignedSame, 2, 1.0, 4.0});
    CHECK(r1.x == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(r1.y == doctest::Approx(38.0 / 3.0).epsilon(1e-14));

    // StaggeredOpposite: sum is exactly -4
    const Vec2 r3 = ring_rhs({RingVariant::StaggeredOpposite, 4, 0.7, 2.9});
    CHECK(r3.x + r3.y == doctest::Approx(-4.0).epsilon(1e-15));

    // CenterAlignedOppositeCenter n=3 at (1,4): rho1' = -12/7
    const Vec2 r5 = ring_rhs({RingVariant::CenterAlignedOppositeCenter, 3, 1.0, 4.0});
    CHECK(r5.x == doctest::Approx(-12.0 / 7.0).epsilon(1e-14));

    // equal radii: the aligned kernel denominator vanishes
    CHECK_THROWS_AS(ring_rhs({RingVariant::CenterAlignedOppositeCenter, 3, 2.0, 2.0}),
                    std::domain_error);
}

TEST_CASE("ring_rhs matches the full 2D flow for every variant") {
    Rng rng(8);
    for (RingVariant v : kAllRingVariants) {
        for (int n : {2, 3, 5}) {
            const double rho1 = rng.uniform(0.3, 2.0);
            const double rho2 = rho1 + rng.uniform(0.5, 4.0);
            const RingSystem sys{v, n, rho1, rho2};
            const auto full_v = velocity_field(lift_ring(sys, 0.37));
            const VortexConfiguration lifted = lift_ring(sys, 0.37);
            // rho' = 2 x . v for the first member of each ring
            const double rd1 = 2.0 * dot(lifted.position(0), full_v[0]);
            const double rd2 = 2.0 * dot(lifted.position(n),
                                         full_v[static_cast<size_t>(n)]);
            const Vec2 reduced_rhs = ring_rhs(sys);
            CHECK(std::abs(rd1 - reduced_rhs.x) < 1e-9);
            CHECK(std::abs(rd2 - reduced_rhs.y) < 1e-9);
        }
    }
}

TEST_CASE("ring sum constants") {
    for (int n : {2, 3, 4, 6}) {
        CHECK(ring_sum_constant(RingVariant::AlignedSame, n) == 8.0 * n - 4.0);
        CHECK(ring_sum_constant(RingVariant::StaggeredSame, n) == 8.0 * n - 4.0);
        CHECK(ring_sum_constant(RingVariant::StaggeredOpposite, n) == -4.0);
        CHECK(ring_sum_constant(RingVariant::CenterAlignedSame, n) == 8.0 * n + 4.0);
        CHECK(ring_sum_constant(RingVariant::CenterStaggeredSame, n) == 8.0 * n + 4.0);
        CHECK(ring_sum_constant(RingVariant::CenterAlignedOppositeCenter, n) == 8.0 * n - 12.0);
        CHECK(ring_sum_constant(RingVariant::CenterStaggeredOppositeCenter, n) ==
              8.0 * n - 12.0);
        CHECK(ring_sum_constant(RingVariant::CenterStaggeredOppositeRing, n) == -4.0);
        for (RingVariant v : kAllRingVariants) {
            const RingSystem sys{v, n, 0.9, 3.3};
            const Vec2 rhs = ring_rhs(sys);
            CHECK(rhs.x + rhs.y == doctest::Approx(ring_sum_constant(v, n)).epsilon(1e-14));
        }
    }
}

TEST_CASE("ring kernel closed form vs brute-force sum") {
    CHECK(ring_kernel_sum(2.0, 2, false) == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
    CHECK(ring_kernel_sum(2.0, 3, true) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
    CHECK(ring_kernel_sum(1.0 + 1e-9, 4, true) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK_THROWS_AS(ring_kernel_sum(0.9, 3, false), std::domain_error);
    for (int n = 2; n <= 12; ++n)
        for (double x : {1.1, 2.0, 10.0})
            for (bool staggered : {false, true})
                CHECK(std::abs(ring_kernel_sum(x, n, staggered) -
                               kernel_sum_direct(x, n, staggered)) /
                          ring_kernel_sum(x, n, false) <
                      1e-12);
}

TEST_CASE("lift_ring geometry") {
    const auto aligned = lift_ring({RingVariant::AlignedSame, 2, 1.0, 4.0});
    REQUIRE(aligned.size() == 4);
    CHECK(norm(aligned.position(0) - Vec2{1, 0}) < 1e-15);
    CHECK(norm(aligned.position(1) - Vec2{-1, 0}) < 1e-12);
    CHECK(norm(aligned.position(2) - Vec2{2, 0}) < 1e-15);
    CHECK(norm(aligned.position(3) - Vec2{-2, 0}) < 1e-12);

    // staggered outer ring rotated by pi/n
    const auto staggered = lift_ring({RingVariant::StaggeredSame, 2, 1.0, 4.0});
    CHECK(std::abs(dot(staggered.position(2), Vec2{1, 0})) < 1e-12);
    CHECK(norm(staggered.position(2)) == doctest::Approx(2.0));

    // center variants place the extra vortex at the center point
    const auto center = lift_ring({RingVariant::CenterAlignedOppositeCenter, 3, 1.0, 4.0},
                                  0.0, {0.5, -0.25});
    REQUIRE(center.size() == 7);
    CHECK(norm(center.position(6) - Vec2{0.5, -0.25}) == doctest::Approx(0.0));
    CHECK(center.winding(6) == -1);
    CHECK(center.winding(0) == 1);

    const auto opp_ring = ring_windings(RingVariant::CenterStaggeredOppositeRing, 2);
    CHECK(opp_ring[0].value() == 1);
    CHECK(opp_ring[2].value() == -1);
    CHECK(opp_ring[4].value() == -1);
}

TEST_CASE("lift/reduce round trip for every variant") {
    for (RingVariant v : kAllRingVariants) {
        for (int n : {2, 3}) {
            const RingSystem sys{v, n, 1.0, 4.0};
            const double t_end = 0.3;
            const auto grid = uniform_times(0.0, t_end, 7);
            const RingTrajectory reduced = integrate_ring(sys, grid);
            const Trajectory full = integrate(lift_ring(sys), tight(t_end), grid);
            REQUIRE(full.terminal.kind == TerminalKind::ReachedEnd);
            for (size_t k = 0; k < reduced.times.size(); ++k) {
                bool matched = false;
                for (size_t q = 0; q < full.times.size(); ++q) {
                    if (std::abs(full.times[q] - reduced.times[k]) > 1e-12) continue;
                    const Vec2 rho = ring_radii_sq(full.states[q], v, n);
                    CHECK(std::abs(rho.x - reduced.rho1[k]) < 1e-6);
                    CHECK(std::abs(rho.y - reduced.rho2[k]) < 1e-6);
                    matched = true;
                }
                CHECK(matched);
            }
        }
    }
}

TEST_CASE("collinear configurations stay on their line") {
    Rng rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        const auto config = random_collinear_config(rng, rng.uniform_int(3, 6),
                                                    WindingMode::AllPlus);
        const auto line = detect_collinear(config);
        REQUIRE(line.has_value());
        const Trajectory traj = integrate(config, tight(10.0));
        for (const auto& state : traj.states)
            for (const Vec2& p : state.positions())
                CHECK(std::abs(cross(line->direction, p - line->origin)) < 1e-8);
    }
}

TEST_CASE("triangle_state examples") {
    // equilateral with side 1
    std::vector<Vec2> eq{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
    const TriangleState s = triangle_state({eq, uniform_windings(3)});
    CHECK(s.theta1 == doctest::Approx(kPi / 3).epsilon(1e-12));
    CHECK(s.theta2 == doctest::Approx(kPi / 3).epsilon(1e-12));
    CHECK(s.theta3 == doctest::Approx(kPi / 3).epsilon(1e-12));
    CHECK(s.area == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));

    // right isoceles, legs 1 at vortex 1
    std::vector<Vec2> ri{{0, 0}, {1, 0}, {0, 1}};
    const TriangleState sr = triangle_state({ri, uniform_windings(3)});
    CHECK(sr.theta1 == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(sr.theta2 == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(sr.theta3 == doctest::Approx(kPi / 4).epsilon(1e-12));

    // Heron area equals the cross-product area
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const auto config = random_config(rng, 3, WindingMode::AllPlus);
        const TriangleState st = triangle_state(config);
        const double cross_area =
            0.5 * std::abs(cross(config.position(1) - config.position(0),
                                 config.position(2) - config.position(0)));
        CHECK(st.area == doctest::Approx(cross_area).epsilon(1e-12));
        CHECK(st.theta1 + st.theta2 + st.theta3 == doctest::Approx(kPi).epsilon(1e-10));
    }

    // collinear input rejected
    std::vector<Vec2> flat{{0, 0}, {1, 0}, {2, 0}};
    CHECK_THROWS_AS(triangle_state({flat, uniform_windings(3)}), std::domain_error);
}

TEST_CASE("triangle_rhs_same_sign examples") {
    // equilateral side s: all d' = 6/s, all theta' = 0
    for (double s : {0.5, 1.0, 2.5}) {
        std::vector<Vec2> eq{{0, 0}, {s, 0}, {0.5 * s, s * std::sqrt(3.0) / 2}};
        const auto rhs = triangle_rhs_same_sign(triangle_state({eq, uniform_windings(3)}));
        for (int i = 0; i < 3; ++i) CHECK(rhs[i] == doctest::Approx(6.0 / s).epsilon(1e-12));
        for (int i = 3; i < 6; ++i) CHECK(std::abs(rhs[i]) < 1e-12);
    }

    // isoceles d12 = d13 < d23: theta2' = theta3' by symmetry
    std::vector<Vec2> iso{{0, 1.2}, {-0.9, 0}, {0.9, 0}};
    const auto rhs = triangle_rhs_same_sign(triangle_state({iso, uniform_windings(3)}));
    CHECK(rhs[4] == doctest::Approx(rhs[5]).epsilon(1e-12));
}

namespace {

// Finite-difference derivative of the (d, theta) state along the full flow.
std::array<double, 6> full_flow_state_derivative(const VortexConfiguration& config,
                                                 double h = 1e-6) {
    StepControl c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-14;
    c.t_end = h;
    c.sample_interval = h;
    auto advance = [&](const VortexConfiguration& from) {
        return integrate(from, c).final_state();
    };
    const TriangleState plus = triangle_state(advance(config));
    const TriangleState base = triangle_state(config);
    return {(plus.d12 - base.d12) / h,       (plus.d13 - base.d13) / h,
            (plus.d23 - base.d23) / h,       (plus.theta1 - base.theta1) / h,
            (plus.theta2 - base.theta2) / h, (plus.theta3 - base.theta3) / h};
}

}  // namespace

TEST_CASE("triangle_rhs_same_sign matches the full flow") {
    Rng rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        const auto config = random_config(rng, 3, WindingMode::AllPlus);
        const auto expect = full_flow_state_derivative(config);
        const auto got = triangle_rhs_same_sign(triangle_state(config));
        for (int i = 0; i < 6; ++i)
            CHECK(std::abs(got[static_cast<size_t>(i)] - expect[static_cast<size_t>(i)]) <
                  1e-4 * std::max(1.0, std::abs(expect[static_cast<size_t>(i)])));
    }
}

TEST_CASE("triangle_rhs_mixed: symmetry, angle sum, signs, full flow") {
    // isoceles d12 = d23 keeps d12' = d23'
    std::vector<Vec2> iso{{-0.7, -0.9}, {0, 0}, {0.7, -0.9}};
    const auto rhs_iso = triangle_rhs_mixed(triangle_state({iso, make_windings({1, -1, 1})}));
    CHECK(rhs_iso[0] == doctest::Approx(rhs_iso[2]).epsilon(1e-12));

    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const auto config = random_mixed_triangle(rng, false);
        const TriangleState s = triangle_state(config);
        const auto rhs = triangle_rhs_mixed(s);
        CHECK(std::abs(rhs[3] + rhs[4] + rhs[5]) < 1e-12);
        CHECK(rhs[3] < 0.0);  // theta1' < 0
        CHECK(rhs[4] > 0.0);  // theta2' > 0
        CHECK(rhs[5] < 0.0);  // theta3' < 0
        const auto expect = full_flow_state_derivative(config);
        for (int i = 0; i < 6; ++i)
            CHECK(std::abs(rhs[static_cast<size_t>(i)] - expect[static_cast<size_t>(i)]) <
                  1e-4 * std::max(1.0, std::abs(expect[static_cast<size_t>(i)])));
    }
}

TEST_CASE("phase_state") {
    // exact equilateral at t = 0: psi = 0, s = 0
    std::vector<Vec2> eq;
    for (int j = 0; j < 3; ++j) eq.push_back(unit_vector(2.0 * kPi * j / 3.0 + 0.2));
    const VortexConfiguration config(eq, uniform_windings(3));
    const double h3_0 = integral_set(config, 0.0).h3;
    const PhaseState ps = phase_state(config, 0.0, h3_0);
    CHECK(norm(ps.psi) < 1e-12);
    CHECK(ps.s == 0.0);
    CHECK(ps.phi1 == doctest::Approx(2.0 * kPi / 3).epsilon(1e-12));

    // log map: 12t + h3 = e^4 h3 -> s = 1
    const double t1 = h3_0 * (std::exp(4.0) - 1.0) / 12.0;
    CHECK(phase_state(config, t1, h3_0).s == doctest::Approx(1.0).epsilon(1e-12));

    // mass center off the origin is rejected
    CHECK_THROWS_AS(phase_state(translated(config, {0.1, 0.0}), 0.0, h3_0),
                    std::invalid_argument);
}

TEST_CASE("time grid helpers") {
    const auto u = uniform_times(0.0, 1.0, 5);
    CHECK(u == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    const auto l = log_spaced_times(0.01, 100.0, 5);
    CHECK(l.front() == doctest::Approx(0.01));
    CHECK(l.back() == doctest::Approx(100.0));
    CHECK(l[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(uniform_times(1.0, 0.5, 5), std::invalid_argument);
    CHECK_THROWS_AS(uniform_times(0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_times(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_times(1.0, 0.5, 5), std::invalid_argument);
}

TEST_CASE("same-sign triangle angles squeeze onto pi/3") {
    Rng rng(77);
    for (int trial = 0; trial < 4; ++trial) {
        const auto config = random_config(rng, 3, WindingMode::AllPlus);
        StepControl c = tight(2000.0);  // the angles approach pi/3 like t^{-1/2}
        c.dt_max = 50.0;
        c.sample_interval = 10.0;
        const Trajectory traj = integrate(config, c);
        double prev_max = 1e300, prev_min = -1.0;
        for (const auto& state : traj.states) {
            const TriangleState s = triangle_state(state);
            const double th_max = std::max({s.theta1, s.theta2, s.theta3});
            const double th_min = std::min({s.theta1, s.theta2, s.theta3});
            CHECK(th_max <= prev_max + 1e-10);
            CHECK(th_min >= prev_min - 1e-10);
            prev_max = th_max;
            prev_min = th_min;
        }
        CHECK(std::abs(prev_max - kPi / 3) < 0.05);
        CHECK(std::abs(prev_min - kPi / 3) < 0.05);
    }
}

TEST_CASE("center-opposite aligned rings, n=3: 1/sqrt(rho1) + 1/sqrt(rho2) is conserved") {
    const double a1 = 1.0, a2 = 2.0;
    const RingSystem sys{RingVariant::CenterAlignedOppositeCenter, 3, a1 * a1, a2 * a2};
    const auto grid = log_spaced_times(0.01, 200.0, 60);
    const RingTrajectory run = integrate_ring(sys, grid);
    const double want = (a1 + a2) / (a1 * a2);
    for (size_t k = 0; k < run.times.size(); ++k) {
        const double got = 1.0 / std::sqrt(run.rho1[k]) + 1.0 / std::sqrt(run.rho2[k]);
        CHECK(std::abs(got - want) < 1e-8);
    }
    // rho1 approaches (a1 a2 / (a1 + a2))^2 from above
    CHECK(run.rho1.back() > 4.0 / 9.0);
    CHECK(run.rho1.back() - 4.0 / 9.0 < 0.05);
}

TEST_CASE("ring trajectory floor stop: staggered opposite rings") {
    // staggered opposite rings: full collapse at T_c = (a1^2 + a2^2)/4 = 5/4,
    // with the sum law exact along the way
    const RingSystem sys{RingVariant::StaggeredOpposite, 3, 1.0, 4.0};
    const auto grid = uniform_times(0.0, 1.3, 131);
    const RingTrajectory traj = integrate_ring(sys, grid);
    CHECK(traj.reached_floor);
    CHECK(std::abs(traj.t_final - 1.25) < 1e-4);
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const double sum_expect = -4.0 * traj.times[k] + 5.0;
        CHECK(std::abs(traj.rho1[k] + traj.rho2[k] - sum_expect) < 1e-8);
    }
}

TEST_SUITE_END();
