#include <doctest.h>

#include <cmath>

#include "vortex/io.hpp"
#include "vortex/scenario.hpp"

using namespace vortex;

namespace {

nlohmann::json dipole_doc() {
    return nlohmann::json::parse(R"({
      "scenario": {"vortices": [
        {"x": 1.0, "y": 0.0, "m": 1},
        {"x": -1.0, "y": 0.0, "m": -1}
      ]},
      "integrator": {"t_end": 1.0, "sample_interval": 0.05}
    })");
}

}  // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("parse -> serialize -> parse round trip") {
    const std::vector<nlohmann::json> docs = {
        dipole_doc(),
        nlohmann::json::parse(R"({
          "scenario": {"generator": {"kind": "polygon", "n": 4, "r0": 1.0}},
          "integrator": {"t_end": 1.5},
          "sampling": {"mode": "log", "points": 50, "t_start": 0.01},
          "outputs": {"trajectory_csv": "poly.csv", "events_json": "poly_events.json"}
        })"),
        nlohmann::json::parse(R"({
          "scenario": {"generator": {"kind": "two_rings", "variant": "staggered_opposite",
                                     "n": 3, "a1": 1.0, "a2": 2.0}}
        })"),
        nlohmann::json::parse(R"({
          "scenario": {"generator": {"kind": "three_vortex", "d12": 1.0, "d23": 2.0,
                                     "gamma": 1.2}}
        })"),
        nlohmann::json::parse(R"({
          "scenario": {"generator": {"kind": "collinear", "offsets": [-1.0, 0.0, 2.0],
                                     "windings": [1, -1, 1], "angle": 0.3}}
        })"),
    };
    for (const auto& doc : docs) {
        const ScenarioSpec first = parse_scenario_json(doc);
        const nlohmann::json serialized = scenario_to_json(first);
        const ScenarioSpec second = parse_scenario_json(serialized);
        CHECK(scenario_to_json(second) == serialized);
    }
}

TEST_CASE("spec errors") {
    CHECK_THROWS_AS(parse_scenario_json(nlohmann::json::parse("{}")), SpecError);
    CHECK_THROWS_AS(parse_scenario_json(nlohmann::json::parse(
                        R"({"scenario": {"generator": {"kind": "mystery"}}})")),
                    SpecError);
    CHECK_THROWS_AS(parse_scenario_json(nlohmann::json::parse(
                        R"({"scenario": {"generator": {"kind": "polygon", "n": 4}}})")),
                    SpecError);  // r0 missing: physical parameters have no defaults
    CHECK_THROWS_AS(parse_scenario_json(nlohmann::json::parse(
                        R"({"scenario": {"vortices": [{"x": 0, "y": 0, "m": 1}]}})")),
                    SpecError);
    // both vortices and generator present
    CHECK_THROWS_AS(parse_scenario_json(nlohmann::json::parse(
                        R"({"scenario": {"vortices": [{"x":0,"y":0,"m":1},{"x":1,"y":0,"m":1}],
                            "generator": {"kind": "polygon", "n": 3, "r0": 1.0}}})")),
                    SpecError);
    // mismatched ring kind vs variant
    CHECK_THROWS_AS(parse_scenario_json(nlohmann::json::parse(
                        R"({"scenario": {"generator": {"kind": "two_rings",
                            "variant": "center_aligned_same", "n": 2, "a1": 1.0, "a2": 2.0}}})")),
                    SpecError);
    // invalid integrator controls
    CHECK_THROWS_AS(parse_scenario_json(nlohmann::json::parse(
                        R"({"scenario": {"generator": {"kind": "polygon", "n": 3, "r0": 1.0}},
                            "integrator": {"t_end": -1.0}})")),
                    SpecError);
    // coincident vortices surface with the offending pair named
    const auto spec = parse_scenario_json(nlohmann::json::parse(
        R"({"scenario": {"vortices": [{"x":0,"y":0,"m":1},{"x":0,"y":0,"m":-1}]}})"));
    try {
        build_configuration(spec);
        CHECK(false);
    } catch (const DegenerateConfigurationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("0") != std::string::npos);
        CHECK(msg.find("1") != std::string::npos);
    }
}

TEST_CASE("generators build valid configurations") {
    const auto rings = parse_scenario_json(nlohmann::json::parse(
        R"({"scenario": {"generator": {"kind": "two_rings_center",
            "variant": "center_staggered_opposite_ring", "n": 2, "a1": 1.0, "a2": 2.0}}})"));
    const VortexConfiguration c = build_configuration(rings);
    CHECK(c.size() == 5);
    CHECK(c.winding(0) == 1);
    CHECK(c.winding(2) == -1);
    CHECK(c.winding(4) == -1);

    const auto tri = parse_scenario_json(nlohmann::json::parse(
        R"({"scenario": {"generator": {"kind": "three_vortex", "d12": 1.0, "d23": 2.0,
            "gamma": 1.0}}})"));
    const VortexConfiguration t = build_configuration(tri);
    CHECK(norm(t.position(0) - t.position(1)) == doctest::Approx(1.0));
    CHECK(norm(t.position(2) - t.position(1)) == doctest::Approx(2.0));
    CHECK(t.winding(1) == -1);
}

TEST_CASE("run_scenario: dipole collides near d0^2/8") {
    const ScenarioSpec spec = parse_scenario_json(dipole_doc());
    const Trajectory traj = run_scenario(spec);
    REQUIRE(traj.terminal.kind == TerminalKind::Collision);
    CHECK(std::abs(traj.terminal.collision->t_collision - 0.5) < 1e-3);
    const nlohmann::json ev = events_json(traj);
    CHECK(ev["terminal"]["type"] == "collision");
    CHECK(ev["collision"]["clusters"].size() == 1);
    CHECK(ev["windings"] == nlohmann::json({1, -1}));
}

TEST_CASE("oracle comparisons") {
    const auto rings = parse_scenario_json(nlohmann::json::parse(
        R"({"scenario": {"generator": {"kind": "two_rings", "variant": "aligned_same",
            "n": 2, "a1": 1.0, "a2": 2.0}},
            "integrator": {"t_end": 1.0, "rel_tol": 1e-11, "abs_tol": 1e-13}})"));
    const OracleComparison cmp = compare_with_oracle(rings);
    CHECK(cmp.oracle == "aligned_same");
    CHECK(cmp.max_rel_deviation < 1e-5);

    const auto poly = parse_scenario_json(nlohmann::json::parse(
        R"({"scenario": {"generator": {"kind": "polygon", "n": 6, "r0": 1.0}},
            "integrator": {"t_end": 1.5, "rel_tol": 1e-11, "abs_tol": 1e-13}})"));
    CHECK(compare_with_oracle(poly).max_rel_deviation < 1e-6);

    const auto mixed = parse_scenario_json(nlohmann::json::parse(
        R"({"scenario": {"generator": {"kind": "three_vortex", "d12": 1.0, "d23": 1.5,
            "gamma": 1.0}}})"));
    CHECK_THROWS_AS(compare_with_oracle(mixed), NoOracleError);
}

TEST_CASE("figure data obeys the variant laws") {
    // figure 3 (staggered opposite): rho1 + rho2 = 5 - 4t on every row
    for (const FigureSeries& s : figure_data(3)) {
        for (size_t k = 0; k < s.traj.times.size(); ++k) {
            const double want = 5.0 - 4.0 * s.traj.times[k];
            CHECK(std::abs(s.traj.rho1[k] + s.traj.rho2[k] - want) < 1e-8);
        }
        CHECK(s.traj.reached_floor);
        CHECK(std::abs(s.traj.t_final - 1.25) < 1e-4);
    }
    // figure 2, n=2 matches the closed form
    const auto fig2 = figure_data(2);
    const auto sol = ring_n2_closed_form(RingVariant::AlignedSame, 1.0, 2.0);
    const FigureSeries& n2 = fig2.front();
    REQUIRE(n2.n == 2);
    for (size_t k = 0; k < n2.traj.times.size(); ++k) {
        const Vec2 rho = sol.ring_rho(n2.traj.times[k]);
        CHECK(std::abs(n2.traj.rho1[k] - rho.x) < 1e-6);
        CHECK(std::abs(n2.traj.rho2[k] - rho.y) < 1e-6);
    }
    // figure 5, n=2: rho1 hits zero at 5/14
    const auto fig5 = figure_data(5);
    CHECK(fig5.front().traj.reached_floor);
    CHECK(std::abs(fig5.front().traj.t_final - 5.0 / 14.0) < 1e-4);

    // figure 4: n=2 inner ring dies at the quadratic root, n=3 stays bounded
    const auto fig4 = figure_data(4);
    REQUIRE(fig4.size() == 4);
    CHECK(fig4[0].traj.reached_floor);
    const double c1 = 2.5;
    const double root4 = 0.5 * (-c1 + std::sqrt(c1 * c1 + 4.0));
    CHECK(std::abs(fig4[0].traj.t_final - root4) < 1e-4);
    CHECK(!fig4[1].traj.reached_floor);
    CHECK(fig4[1].traj.rho1.back() > 4.0 / 9.0);
    CHECK(fig4[1].traj.rho1.back() < 1.0);

    CHECK_THROWS_AS(figure_data(7), std::invalid_argument);
}

TEST_CASE("CSV formatting is full-precision and locale-independent") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    const double pi = 3.14159265358979323846;
    CHECK(std::stod(format_double(pi)) == pi);
    CHECK(std::stod(format_double(-2.5e-7)) == -2.5e-7);
    CHECK(format_double(-2.5e-7).find(',') == std::string::npos);
}

TEST_SUITE_END();
