#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vortex/analysis.hpp"
#include "vortex/batch.hpp"
#include "vortex/integrator.hpp"
#include "vortex/io.hpp"

using namespace vortex;

namespace {

constexpr double kPi = std::numbers::pi;

StepControl tight(double t_end) {
    StepControl c;
    c.rel_tol = 1e-10;
    c.abs_tol = 1e-12;
    c.t_end = t_end;
    c.sample_interval = std::max(t_end / 50.0, 1e-3);
    return c;
}

VortexConfiguration dipole(double d0) {
    return {{{d0 / 2, 0.0}, {-d0 / 2, 0.0}}, make_windings({1, -1})};
}

VortexConfiguration polygon_config(int n, double r0) {
    std::vector<Vec2> pts;
    for (int j = 0; j < n; ++j) pts.push_back(r0 * unit_vector(2.0 * kPi * j / n));
    return {std::move(pts), uniform_windings(n)};
}

}  // namespace

TEST_SUITE_BEGIN("integrator");

TEST_CASE("step control validation") {
    StepControl c;
    CHECK_NOTHROW(c.validate());
    c.dt_min = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = StepControl{};
    c.collision_eps = 1e-13;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = StepControl{};
    c.t_end = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = StepControl{};
    c.dt_init = c.dt_max * 2.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("dipole d0=2 collides at t = 0.5 at the midpoint") {
    const Trajectory traj = integrate(dipole(2.0), tight(1.0));
    REQUIRE(traj.terminal.kind == TerminalKind::Collision);
    const CollisionEvent& ev = *traj.terminal.collision;
    CHECK(std::abs(ev.t_collision - 0.5) < 1e-3);
    REQUIRE(ev.clusters.size() == 1);
    CHECK(ev.clusters[0] == std::vector<int>{0, 1});
    CHECK(norm(ev.centroids[0]) < 1e-6);
    // sample times strictly increase and end at the terminal time
    for (size_t k = 1; k < traj.times.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
    CHECK(traj.times.back() == ev.t_collision);
}

TEST_CASE("polygon N=4 r0=1: radius sqrt(10) at t = 1.5") {
    StepControl c = tight(1.5);
    const Trajectory traj = integrate(polygon_config(4, 1.0), c);
    REQUIRE(traj.terminal.kind == TerminalKind::ReachedEnd);
    const double want = std::sqrt(10.0);
    for (int j = 0; j < 4; ++j)
        CHECK(std::abs(norm(traj.final_state().position(j)) - want) / want < 1e-6);
}

TEST_CASE("mixed isoceles 3-vortex: full cluster at the mass center at H1/12") {
    // mirror-exact isoceles frame (see the batch generator)
    std::vector<Vec2> pts{{-0.7, -0.9}, {0.0, 0.0}, {0.7, -0.9}};
    const VortexConfiguration config(pts, make_windings({1, -1, 1}));
    const double t_bound = integral_set(config, 0.0).h1 / 12.0;
    StepControl c = tight(2.0 * t_bound);
    const Trajectory traj = integrate(config, c);
    REQUIRE(traj.terminal.kind == TerminalKind::Collision);
    const CollisionEvent& ev = *traj.terminal.collision;
    REQUIRE(ev.clusters.size() == 1);
    CHECK(ev.clusters[0].size() == 3);
    CHECK(std::abs(ev.t_collision - t_bound) / t_bound < 1e-3);
    CHECK(norm(ev.centroids[0] - config.mass_center()) < 1e-6);
}

TEST_CASE("refine_collision_time") {
    // dipole d0=2: crossing at 0.5 (within the integration's own drift)
    const VortexConfiguration start = dipole(2.0);
    StepControl c = tight(1.0);
    const double t1 = refine_collision_time(start, 0.0, 0.7, c.collision_eps, c);
    CHECK(std::abs(t1 - 0.5) < 1e-6);

    const double t2 = refine_collision_time(dipole(1.0), 0.0, 0.2, c.collision_eps, c);
    CHECK(std::abs(t2 - 0.125) < 1e-6);

    // same-sign pair: d_min increases, no crossing
    const VortexConfiguration pair({{1.0, 0.0}, {-1.0, 0.0}}, make_windings({1, 1}));
    CHECK_THROWS_AS(refine_collision_time(pair, 0.0, 1.0, c.collision_eps, c),
                    NoCrossingError);
}

TEST_CASE("classify_clusters basic geometry") {
    const double eps = 1e-6;
    // two tight groups and a singleton
    std::vector<Vec2> pts{{0, 0},       {0.5e-6, 0}, {1.0e-6, 0},
                          {3.0, 0},     {3.0, 1e-7}, {-2.0, 1.0}};
    const VortexConfiguration config(pts, uniform_windings(6));
    const auto clusters = classify_clusters(config, eps);
    REQUIRE(clusters.size() == 3);
    CHECK(clusters[0] == std::vector<int>{0, 1, 2});
    CHECK(clusters[1] == std::vector<int>{3, 4});
    CHECK(clusters[2] == std::vector<int>{5});
    const auto centroids = cluster_centroids(config, clusters);
    CHECK(centroids[0].x == doctest::Approx(0.5e-6));

    // no pair within eps -> precondition violation
    CHECK_THROWS_AS(classify_clusters(VortexConfiguration({{0, 0}, {1, 0}},
                                                          uniform_windings(2)),
                                      eps),
                    std::invalid_argument);
}

TEST_CASE("staggered opposite rings collapse into one cluster of all 2n") {
    // the simultaneous collapse is unstable at threshold 1e-6, so detection
    // runs inside the symmetric window (see notes); the partition and the
    // origin location are then exact
    const RingSystem sys{RingVariant::StaggeredOpposite, 2, 1.0, 4.0};
    StepControl c = tight(1.3);
    c.abs_tol = 1e-13;
    c.dt_min = 1e-15;
    c.collision_eps = 1e-3;
    const Trajectory traj = integrate(lift_ring(sys), c);
    REQUIRE(traj.terminal.kind == TerminalKind::Collision);
    const CollisionEvent& ev = *traj.terminal.collision;
    REQUIRE(ev.clusters.size() == 1);
    CHECK(ev.clusters[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(std::abs(ev.t_collision - 1.25) < 1e-3);
    CHECK(norm(ev.centroids[0]) < 1e-9);
}

TEST_CASE("center-opposite-ring n=2: inner pair + center cluster, outer singletons") {
    const RingSystem sys{RingVariant::CenterStaggeredOppositeRing, 2, 1.0, 4.0};
    StepControl c = tight(0.45);
    c.rel_tol = 1e-11;
    c.abs_tol = 1e-13;
    c.dt_min = 1e-15;
    c.collision_eps = 6e-3;
    const Trajectory traj = integrate(lift_ring(sys), c);
    REQUIRE(traj.terminal.kind == TerminalKind::Collision);
    const CollisionEvent& ev = *traj.terminal.collision;
    REQUIRE(ev.clusters.size() == 3);
    CHECK(ev.clusters[0] == std::vector<int>{0, 1, 4});
    CHECK(ev.clusters[1] == std::vector<int>{2});
    CHECK(ev.clusters[2] == std::vector<int>{3});
    CHECK(std::abs(ev.t_collision - 5.0 / 14.0) < 1e-4);
    CHECK(norm(ev.locations().front()) < 1e-9);
    // singletons stay far from the collision location
    for (int j : {2, 3})
        CHECK(norm(traj.final_state().position(j) - ev.locations().front()) >
              10.0 * c.collision_eps);
}

TEST_CASE("d_min turning point detector") {
    const VortexConfiguration dip = dipole(2.0);
    StepControl c = tight(1.0);
    // a dipole only shrinks: no turning point before the collision ends the run
    CHECK(!dmin_first_local_minimum(integrate(dip, c)).has_value());
    // synthetic dip: d_min falls to 0.5 at t=2, then recovers
    Trajectory synth;
    for (int k = 0; k <= 8; ++k) {
        const double t = 0.5 * k;
        const double d = 0.5 + 0.1 * std::abs(t - 2.0);
        synth.times.push_back(t);
        synth.states.push_back(
            VortexConfiguration({{0, 0}, {d, 0}, {5, 5}}, uniform_windings(3)));
    }
    synth.terminal = {TerminalKind::ReachedEnd, 4.0, std::nullopt};
    const auto turn = dmin_first_local_minimum(synth);
    REQUIRE(turn.has_value());
    CHECK(turn->first == doctest::Approx(2.0));
    CHECK(turn->second == doctest::Approx(0.5));
}

TEST_CASE("first integrals conserved on random mixed runs") {
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.uniform_int(2, 6);
        const auto config = random_config(rng, n, WindingMode::Mixed);
        const Trajectory traj = integrate(config, tight(1.0));
        const InvariantReport rep = invariant_report(traj);
        CHECK(rep.h1.value < 1e-6);
        CHECK(rep.h2.value < 1e-6);
        CHECK(rep.h3.value < 1e-6);
        CHECK(rep.mass_center.value < 1e-9);
        CHECK(rep.energy_increase.value < 1e-9);
    }
}

TEST_CASE("same-sign runs never collide and keep d_min monotone for N <= 4") {
    Rng rng(55);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = rng.uniform_int(2, 4);
        const auto config = random_config(rng, n, WindingMode::AllPlus);
        StepControl c = tight(10.0);
        c.rel_tol = 1e-12;
        c.abs_tol = 1e-14;
        const Trajectory traj = integrate(config, c);
        CHECK(traj.terminal.kind == TerminalKind::ReachedEnd);
        CHECK(!dmin_monotone_check(traj).has_value());
    }
}

TEST_CASE("M0 < 0 runs collide no later than T_a") {
    Rng rng(77);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = rng.uniform_int(2, 5);
        const auto config = random_config(rng, n, WindingMode::M0Negative);
        const IntegralSet s0 = integral_set(config, 0.0);
        const double t_a = *collision_upper_bound(s0.h1, n, s0.m0);
        const Trajectory traj = integrate(config, tight(t_a + 0.1));
        REQUIRE(traj.terminal.kind == TerminalKind::Collision);
        CHECK(traj.terminal.collision->t_collision <= t_a + 1e-3);
    }
}

TEST_CASE("M0 = 0 runs stay inside sqrt(H2)") {
    Rng rng(78);
    for (int trial = 0; trial < 5; ++trial) {
        const auto config = random_config(rng, 4, WindingMode::M0ZeroQuad);
        const double bound = std::sqrt(integral_set(config, 0.0).h2);
        const Trajectory traj = integrate(config, tight(10.0));
        for (const auto& state : traj.states)
            for (const Vec2& p : state.positions()) CHECK(norm(p) <= bound + 1e-6);
    }
}

TEST_CASE("full-set collision identities (mass center at the origin)") {
    // symmetric dipole
    const IntegralSet sd = integral_set(dipole(2.0), 0.0);
    CHECK(std::abs(sd.h1 - 2.0 * sd.h2) < 1e-8);
    CHECK(std::abs(sd.h3 - 0.0 * sd.h2) < 1e-8);
    // staggered opposite rings n=2 (a1=1, a2=2)
    std::vector<Vec2> pts{unit_vector(0.0), unit_vector(kPi), 2.0 * unit_vector(kPi / 2),
                          2.0 * unit_vector(3 * kPi / 2)};
    const VortexConfiguration rings(pts, make_windings({1, 1, -1, -1}));
    const IntegralSet sr = integral_set(rings, 0.0);
    CHECK(std::abs(sr.h1 - 4.0 * sr.h2) < 1e-8);
    CHECK(std::abs(sr.h3 - 2.0 * sr.h2) < 1e-8);
}

TEST_CASE("trajectory scaling covariance") {
    Rng rng(91);
    const auto config = random_config(rng, 4, WindingMode::AllPlus);
    const double alpha = 1.7;
    const double t_end = 0.8;
    StepControl c = tight(t_end);
    const Trajectory base = integrate(config, c);
    StepControl cs = tight(alpha * alpha * t_end);
    const Trajectory scaled_run = integrate(scaled(config, alpha), cs);
    // X_scaled(alpha^2 t) should equal alpha X(t)
    const auto& xs = scaled_run.final_state();
    const auto& xb = base.final_state();
    for (int j = 0; j < 4; ++j)
        CHECK(norm(xs.position(j) - alpha * xb.position(j)) < 1e-6);
}

TEST_CASE("deterministic: identical runs produce identical trajectories") {
    Rng rng(19);
    const auto config = random_config(rng, 5, WindingMode::Mixed);
    const Trajectory a = integrate(config, tight(1.0));
    const Trajectory b = integrate(config, tight(1.0));
    REQUIRE(a.times.size() == b.times.size());
    for (size_t k = 0; k < a.times.size(); ++k) {
        CHECK(a.times[k] == b.times[k]);
        for (int j = 0; j < a.states[k].size(); ++j) {
            CHECK(a.states[k].position(j).x == b.states[k].position(j).x);
            CHECK(a.states[k].position(j).y == b.states[k].position(j).y);
        }
    }
    CHECK(trajectory_csv(a) == trajectory_csv(b));
}

TEST_CASE("configurations already inside the collision threshold end at t=0") {
    StepControl c = tight(1.0);
    c.collision_eps = 1e-2;
    const VortexConfiguration close({{0, 0}, {5e-3, 0}, {2, 2}}, make_windings({1, -1, 1}));
    const Trajectory traj = integrate(close, c);
    REQUIRE(traj.terminal.kind == TerminalKind::Collision);
    CHECK(traj.terminal.t == 0.0);
    CHECK(traj.times.size() == 1);
    CHECK(traj.terminal.collision->clusters.front() == std::vector<int>{0, 1});
}

TEST_CASE("an error-limited step below dt_min yields a StepFloor terminal") {
    StepControl c;
    c.rel_tol = 1e-14;
    c.abs_tol = 1e-16;
    c.dt_min = 0.25;
    c.dt_init = 0.25;
    c.dt_max = 0.25;
    c.t_end = 1.0;
    c.sample_interval = 0.5;
    const Trajectory traj = integrate(dipole(2.0), c);
    CHECK(traj.terminal.kind == TerminalKind::StepFloor);
}

TEST_CASE("max_steps yields a StepBudget terminal") {
    StepControl c = tight(10.0);
    c.max_steps = 5;
    const Trajectory traj = integrate(polygon_config(3, 1.0), c);
    CHECK(traj.terminal.kind == TerminalKind::StepBudget);
    CHECK(traj.times.back() == traj.terminal.t);
}

TEST_CASE("explicit sample grid") {
    const std::vector<double> grid{0.1, 0.3, 0.7};
    StepControl c = tight(1.0);
    const Trajectory traj = integrate(polygon_config(3, 1.0), c, grid);
    REQUIRE(traj.times.size() == 5);  // t=0, grid points, t_end
    CHECK(traj.times[1] == doctest::Approx(0.1));
    CHECK(traj.times[2] == doctest::Approx(0.3));
    CHECK(traj.times[3] == doctest::Approx(0.7));
    CHECK(traj.times[4] == doctest::Approx(1.0));
}

TEST_SUITE_END();
