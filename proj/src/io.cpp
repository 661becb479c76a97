#include "vortex/io.hpp"

#include <charconv>
#include <system_error>

namespace vortex {

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t";
    const int n = traj.states.front().size();
    for (int j = 0; j < n; ++j) {
        out += ",x_" + std::to_string(j) + ",y_" + std::to_string(j);
    }
    out += "\n";
    for (size_t k = 0; k < traj.times.size(); ++k) {
        out += format_double(traj.times[k]);
        for (int j = 0; j < n; ++j) {
            const Vec2 p = traj.states[k].position(j);
            out += "," + format_double(p.x) + "," + format_double(p.y);
        }
        out += "\n";
    }
    return out;
}

std::string ring_trajectory_csv(const RingTrajectory& traj) {
    std::string out = "t,rho1,rho2\n";
    for (size_t k = 0; k < traj.times.size(); ++k) {
        out += format_double(traj.times[k]) + "," + format_double(traj.rho1[k]) + "," +
               format_double(traj.rho2[k]) + "\n";
    }
    return out;
}

nlohmann::json terminal_event_json(const TerminalEvent& event) {
    nlohmann::json j;
    j["type"] = terminal_kind_name(event.kind);
    j["t"] = event.t;
    return j;
}

nlohmann::json invariant_report_json(const InvariantReport& report) {
    auto drift = [](const DriftSample& d) {
        return nlohmann::json{{"value", d.value}, {"time", d.time}};
    };
    return nlohmann::json{{"h1_drift", drift(report.h1)},
                          {"h2_drift", drift(report.h2)},
                          {"h3_drift", drift(report.h3)},
                          {"mass_center_drift", drift(report.mass_center)},
                          {"energy_increase", drift(report.energy_increase)}};
}

nlohmann::json events_json(const Trajectory& traj) {
    nlohmann::json j;
    const VortexConfiguration& initial = traj.states.front();
    j["n"] = initial.size();
    j["windings"] = winding_values(initial.windings());
    j["samples"] = traj.times.size();
    j["terminal"] = terminal_event_json(traj.terminal);
    if (traj.terminal.collision) {
        const CollisionEvent& ev = *traj.terminal.collision;
        nlohmann::json c;
        c["t_collision"] = ev.t_collision;
        c["clusters"] = ev.clusters;
        nlohmann::json locs = nlohmann::json::array();
        for (size_t i = 0; i < ev.clusters.size(); ++i)
            if (ev.clusters[i].size() >= 2)
                locs.push_back({{"cluster", ev.clusters[i]},
                                {"x", ev.centroids[i].x},
                                {"y", ev.centroids[i].y}});
        c["locations"] = locs;
        j["collision"] = c;
    }
    j["invariants"] = invariant_report_json(invariant_report(traj));
    if (const auto turn = dmin_first_local_minimum(traj)) {
        j["dmin_first_local_min"] = {{"time", turn->first}, {"value", turn->second}};
    }
    const IntegralSet s0 = integral_set(initial, 0.0);
    j["initial"] = {{"h1", s0.h1},         {"h2", s0.h2}, {"h3", s0.h3},
                    {"m0", s0.m0},         {"energy", s0.energy},
                    {"mass_center", {s0.mass_center.x, s0.mass_center.y}}};
    return j;
}

}  // namespace vortex
