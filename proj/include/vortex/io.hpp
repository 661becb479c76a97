#pragma once

#include <string>

#include "vortex/analysis.hpp"
#include "vortex/integrator.hpp"
#include "vortex/reduced.hpp"

#include <json.hpp>

namespace vortex {

/// Locale-independent decimal rendering with 17 significant digits
/// (round-trips any double bit-exactly).
std::string format_double(double value);

/// Header t,x_0,y_0,...,x_{N-1},y_{N-1}; one row per sample.
std::string trajectory_csv(const Trajectory& traj);

/// Header t,rho1,rho2.
std::string ring_trajectory_csv(const RingTrajectory& traj);

nlohmann::json terminal_event_json(const TerminalEvent& event);
nlohmann::json invariant_report_json(const InvariantReport& report);

/// Full events document for a run: windings, terminal event, collision data,
/// invariant report.
nlohmann::json events_json(const Trajectory& traj);

}  // namespace vortex
