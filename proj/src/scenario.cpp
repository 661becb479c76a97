#include "vortex/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;

const nlohmann::json& require(const nlohmann::json& j, const char* key, const char* context) {
    auto it = j.find(key);
    if (it == j.end())
        throw SpecError(std::string("missing required field '") + key + "' in " + context);
    return *it;
}

double require_number(const nlohmann::json& j, const char* key, const char* context) {
    const auto& v = require(j, key, context);
    if (!v.is_number()) throw SpecError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

Vec2 parse_point(const nlohmann::json& j, const char* key) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SpecError(std::string("field '") + key + "' must be a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

GeneratorSpec parse_generator(const nlohmann::json& g) {
    GeneratorSpec spec;
    spec.kind = require(g, "kind", "generator").get<std::string>();
    if (spec.kind == "polygon") {
        spec.n = static_cast<int>(require_number(g, "n", "polygon generator"));
        spec.r0 = require_number(g, "r0", "polygon generator");
        spec.theta0 = g.value("theta0", 0.0);
        if (g.contains("center")) spec.center = parse_point(g["center"], "center");
        spec.winding = g.value("winding", 1);
    } else if (spec.kind == "collinear") {
        const auto& offs = require(g, "offsets", "collinear generator");
        const auto& winds = require(g, "windings", "collinear generator");
        if (!offs.is_array() || !winds.is_array() || offs.size() != winds.size())
            throw SpecError("collinear generator needs offsets and windings of equal length");
        spec.offsets = offs.get<std::vector<double>>();
        spec.windings = winds.get<std::vector<int>>();
        spec.angle = g.value("angle", 0.0);
        if (g.contains("origin")) spec.center = parse_point(g["origin"], "origin");
    } else if (spec.kind == "two_rings" || spec.kind == "two_rings_center") {
        const std::string name = require(g, "variant", spec.kind.c_str()).get<std::string>();
        const auto variant = ring_variant_from_name(name);
        if (!variant) throw SpecError("unknown ring variant '" + name + "'");
        spec.variant = *variant;
        if (ring_variant_has_center(*variant) != (spec.kind == "two_rings_center"))
            throw SpecError("ring variant '" + name + "' does not match generator kind '" +
                            spec.kind + "'");
        spec.n = static_cast<int>(require_number(g, "n", "ring generator"));
        spec.a1 = require_number(g, "a1", "ring generator");
        spec.a2 = require_number(g, "a2", "ring generator");
        spec.theta0 = g.value("theta0", 0.0);
    } else if (spec.kind == "three_vortex") {
        spec.d12 = require_number(g, "d12", "three_vortex generator");
        spec.d23 = require_number(g, "d23", "three_vortex generator");
        spec.gamma = require_number(g, "gamma", "three_vortex generator");
        spec.windings = g.value("windings", std::vector<int>{1, -1, 1});
        if (spec.windings.size() != 3)
            throw SpecError("three_vortex generator needs exactly 3 windings");
    } else {
        throw SpecError("unknown generator kind '" + spec.kind + "'");
    }
    return spec;
}

nlohmann::json generator_to_json(const GeneratorSpec& g) {
    nlohmann::json j;
    j["kind"] = g.kind;
    if (g.kind == "polygon") {
        j["n"] = g.n;
        j["r0"] = g.r0;
        j["theta0"] = g.theta0;
        j["center"] = {g.center.x, g.center.y};
        j["winding"] = g.winding;
    } else if (g.kind == "collinear") {
        j["offsets"] = g.offsets;
        j["windings"] = g.windings;
        j["angle"] = g.angle;
        j["origin"] = {g.center.x, g.center.y};
    } else if (g.kind == "two_rings" || g.kind == "two_rings_center") {
        j["variant"] = ring_variant_name(g.variant);
        j["n"] = g.n;
        j["a1"] = g.a1;
        j["a2"] = g.a2;
        j["theta0"] = g.theta0;
    } else if (g.kind == "three_vortex") {
        j["d12"] = g.d12;
        j["d23"] = g.d23;
        j["gamma"] = g.gamma;
        j["windings"] = g.windings;
    }
    return j;
}

}  // namespace

ScenarioSpec parse_scenario_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw SpecError("spec document must be a JSON object");
    const auto& sc = require(doc, "scenario", "spec");
    ScenarioSpec spec;
    const bool has_vortices = sc.contains("vortices");
    const bool has_generator = sc.contains("generator");
    if (has_vortices == has_generator)
        throw SpecError("scenario needs exactly one of 'vortices' or 'generator'");
    if (has_vortices) {
        std::vector<std::pair<Vec2, int>> vs;
        for (const auto& v : sc["vortices"]) {
            Vec2 p{require_number(v, "x", "vortex"), require_number(v, "y", "vortex")};
            const int m = static_cast<int>(require_number(v, "m", "vortex"));
            vs.emplace_back(p, m);
        }
        if (vs.size() < 2) throw SpecError("need at least 2 vortices");
        spec.vortices = std::move(vs);
    } else {
        spec.generator = parse_generator(sc["generator"]);
    }

    if (doc.contains("integrator")) {
        const auto& ig = doc["integrator"];
        spec.control.rel_tol = ig.value("rel_tol", spec.control.rel_tol);
        spec.control.abs_tol = ig.value("abs_tol", spec.control.abs_tol);
        spec.control.dt_init = ig.value("dt_init", spec.control.dt_init);
        spec.control.dt_min = ig.value("dt_min", spec.control.dt_min);
        spec.control.dt_max = ig.value("dt_max", spec.control.dt_max);
        spec.control.collision_eps = ig.value("collision_eps", spec.control.collision_eps);
        spec.control.t_end = ig.value("t_end", spec.control.t_end);
        spec.control.sample_interval = ig.value("sample_interval", spec.control.sample_interval);
        spec.control.max_steps = ig.value("max_steps", spec.control.max_steps);
    }
    try {
        spec.control.validate();
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("invalid integrator controls: ") + e.what());
    }

    if (doc.contains("sampling")) {
        const auto& sp = doc["sampling"];
        const std::string mode = sp.value("mode", std::string("uniform"));
        if (mode == "uniform") {
            spec.sampling.mode = SamplingSpec::Mode::Uniform;
        } else if (mode == "log") {
            spec.sampling.mode = SamplingSpec::Mode::Log;
            spec.sampling.points = sp.value("points", spec.sampling.points);
            spec.sampling.t_start = sp.value("t_start", spec.sampling.t_start);
            if (spec.sampling.points < 2 || !(spec.sampling.t_start > 0.0) ||
                !(spec.sampling.t_start < spec.control.t_end))
                throw SpecError("log sampling needs points >= 2 and 0 < t_start < t_end");
        } else {
            throw SpecError("sampling mode must be 'uniform' or 'log'");
        }
    }

    if (doc.contains("outputs")) {
        const auto& out = doc["outputs"];
        spec.trajectory_csv = out.value("trajectory_csv", spec.trajectory_csv);
        spec.events_json = out.value("events_json", spec.events_json);
    }
    return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    return parse_scenario_json(doc);
}

nlohmann::json scenario_to_json(const ScenarioSpec& spec) {
    nlohmann::json doc;
    if (spec.vortices) {
        nlohmann::json vs = nlohmann::json::array();
        for (const auto& [p, m] : *spec.vortices)
            vs.push_back({{"x", p.x}, {"y", p.y}, {"m", m}});
        doc["scenario"]["vortices"] = vs;
    } else if (spec.generator) {
        doc["scenario"]["generator"] = generator_to_json(*spec.generator);
    }
    doc["integrator"] = {{"rel_tol", spec.control.rel_tol},
                         {"abs_tol", spec.control.abs_tol},
                         {"dt_init", spec.control.dt_init},
                         {"dt_min", spec.control.dt_min},
                         {"dt_max", spec.control.dt_max},
                         {"collision_eps", spec.control.collision_eps},
                         {"t_end", spec.control.t_end},
                         {"sample_interval", spec.control.sample_interval},
                         {"max_steps", spec.control.max_steps}};
    if (spec.sampling.mode == SamplingSpec::Mode::Log) {
        doc["sampling"] = {{"mode", "log"},
                           {"points", spec.sampling.points},
                           {"t_start", spec.sampling.t_start}};
    } else {
        doc["sampling"] = {{"mode", "uniform"}};
    }
    doc["outputs"] = {{"trajectory_csv", spec.trajectory_csv},
                      {"events_json", spec.events_json}};
    return doc;
}

VortexConfiguration build_configuration(const ScenarioSpec& spec) {
    if (spec.vortices) {
        std::vector<Vec2> pts;
        std::vector<WindingNumber> ws;
        for (const auto& [p, m] : *spec.vortices) {
            pts.push_back(p);
            try {
                ws.push_back(WindingNumber(m));
            } catch (const std::invalid_argument& e) {
                throw SpecError(e.what());
            }
        }
        return {std::move(pts), std::move(ws)};
    }
    const GeneratorSpec& g = *spec.generator;
    if (g.kind == "polygon") {
        if (g.n < 2) throw SpecError("polygon generator needs n >= 2");
        if (!(g.r0 > 0.0)) throw SpecError("polygon generator needs r0 > 0");
        std::vector<Vec2> pts;
        for (int j = 0; j < g.n; ++j)
            pts.push_back(g.center + g.r0 * unit_vector(2.0 * kPi * j / g.n + g.theta0));
        return {std::move(pts), uniform_windings(g.n, g.winding)};
    }
    if (g.kind == "collinear") {
        CollinearReduction red{g.center, unit_vector(g.angle), g.offsets};
        std::vector<int> wv = g.windings;
        return lift_collinear(red, make_windings(wv));
    }
    if (g.kind == "two_rings" || g.kind == "two_rings_center") {
        if (!(0.0 < g.a1 && g.a1 < g.a2))
            throw SpecError("ring generator needs 0 < a1 < a2");
        RingSystem sys{g.variant, g.n, g.a1 * g.a1, g.a2 * g.a2};
        return lift_ring(sys, g.theta0);
    }
    if (g.kind == "three_vortex") {
        if (!(g.d12 > 0.0 && g.d23 > 0.0 && g.gamma > 0.0 && g.gamma <= kPi))
            throw SpecError("three_vortex generator needs d12, d23 > 0 and 0 < gamma <= pi");
        std::vector<Vec2> pts{g.d12 * unit_vector(0.5 * g.gamma),
                              {0.0, 0.0},
                              g.d23 * unit_vector(-0.5 * g.gamma)};
        return {std::move(pts), make_windings(g.windings)};
    }
    throw SpecError("unknown generator kind '" + g.kind + "'");
}

Trajectory run_scenario(const ScenarioSpec& spec) {
    const VortexConfiguration initial = build_configuration(spec);
    if (spec.sampling.mode == SamplingSpec::Mode::Log) {
        const std::vector<double> grid =
            log_spaced_times(spec.sampling.t_start, spec.control.t_end, spec.sampling.points);
        return integrate(initial, spec.control, grid);
    }
    return integrate(initial, spec.control);
}

OracleComparison compare_with_oracle(const ScenarioSpec& spec) {
    std::optional<ClosedFormSolution> oracle;
    std::string name;
    if (spec.vortices && spec.vortices->size() == 2) {
        const auto& vs = *spec.vortices;
        const bool same = vs[0].second == vs[1].second;
        oracle = pair_dipole_solution(vs[0].first, vs[1].first, same);
        name = same ? "pair" : "dipole";
    } else if (spec.generator && spec.generator->kind == "polygon") {
        const auto& g = *spec.generator;
        oracle = polygon_solution(g.n, g.r0, g.theta0, g.center);
        name = "polygon";
    } else if (spec.generator && (spec.generator->kind == "two_rings" ||
                                  spec.generator->kind == "two_rings_center")) {
        const auto& g = *spec.generator;
        if (g.n != 2)
            throw NoOracleError("ring closed forms exist for n = 2 only");
        if (g.theta0 != 0.0)
            throw NoOracleError("ring oracle comparison requires theta0 = 0");
        try {
            oracle = ring_n2_closed_form(g.variant, g.a1, g.a2);
        } catch (const std::invalid_argument& e) {
            throw NoOracleError(e.what());
        }
        name = ring_variant_name(g.variant);
    } else {
        throw NoOracleError("no closed-form oracle registered for this scenario");
    }

    double t_hi = spec.control.t_end;
    if (oracle->horizon()) t_hi = std::min(t_hi, 0.99 * *oracle->horizon());
    const int samples = 200;
    std::vector<double> grid = uniform_times(0.0, t_hi, samples);

    ScenarioSpec run = spec;
    run.control.t_end = t_hi;
    const VortexConfiguration initial = build_configuration(run);
    const Trajectory traj = integrate(initial, run.control, grid);

    OracleComparison cmp;
    cmp.oracle = name;
    cmp.t_compared = traj.times.back();
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        if (oracle->horizon() && t >= *oracle->horizon()) break;
        const VortexConfiguration ref = oracle->configuration(t);
        if (ref.size() != traj.states[k].size()) continue;
        double scale = 0.0;
        for (int j = 0; j < ref.size(); ++j) scale = std::max(scale, norm(ref.position(j)));
        if (scale == 0.0) scale = 1.0;
        for (int j = 0; j < ref.size(); ++j) {
            const double dev = norm(traj.states[k].position(j) - ref.position(j)) / scale;
            cmp.max_rel_deviation = std::max(cmp.max_rel_deviation, dev);
        }
        ++cmp.samples;
    }
    return cmp;
}

std::vector<FigureSeries> figure_data(int figure_id) {
    RingVariant variant;
    double t_hi;
    switch (figure_id) {
        case 2: variant = RingVariant::AlignedSame; t_hi = 2.0; break;
        case 3: variant = RingVariant::StaggeredOpposite; t_hi = 1.3; break;
        case 4: variant = RingVariant::CenterAlignedOppositeCenter; t_hi = 2.0; break;
        case 5: variant = RingVariant::CenterStaggeredOppositeRing; t_hi = 1.3; break;
        default: throw std::invalid_argument("figure id must be one of 2, 3, 4, 5");
    }
    std::vector<FigureSeries> out;
    const std::vector<double> grid = uniform_times(0.0, t_hi, 401);
    for (int n = 2; n <= 5; ++n) {
        RingSystem sys{variant, n, 1.0, 4.0};
        out.push_back({figure_id, n, integrate_ring(sys, grid)});
    }
    return out;
}

}  // namespace vortex
