#include "vortex/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vortex {

namespace {

// Dormand-Prince 5(4) tableau (no c nodes: the field is autonomous).
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Difference between the 5th- and 4th-order weights.
constexpr double kE[7] = {71.0 / 57600,      0.0,        -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// Fraction of d_min^2 allowed per step: velocities scale like 1/d_min near a
// close pair, so this keeps the step from jumping across the encounter.
constexpr double kDminStepFactor = 0.05;

struct DopriStepper {
    std::span<const int> m;
    size_t dim;
    std::vector<double> k[7];
    std::vector<double> ytmp;
    std::vector<double> y5;

    DopriStepper(std::span<const int> windings, size_t dimension)
        : m(windings), dim(dimension), ytmp(dimension), y5(dimension) {
        for (auto& ki : k) ki.resize(dimension);
    }

    // One trial step; fills y5 and returns the scaled error norm.
    double attempt(const std::vector<double>& y, double dt, double rel_tol, double abs_tol) {
        detail::velocity_raw(y, m, k[0]);
        for (int stage = 1; stage < 7; ++stage) {
            for (size_t i = 0; i < dim; ++i) {
                double acc = 0.0;
                for (int j = 0; j < stage; ++j) acc += kA[stage][j] * k[j][i];
                ytmp[i] = y[i] + dt * acc;
            }
            if (stage == 6) {
                y5 = ytmp;  // stage 7 sits at the 5th-order solution
            }
            detail::velocity_raw(ytmp, m, k[stage]);
        }
        double err_sq = 0.0;
        for (size_t i = 0; i < dim; ++i) {
            double e = 0.0;
            for (int j = 0; j < 7; ++j) e += kE[j] * k[j][i];
            e *= dt;
            const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err_sq += (e / sc) * (e / sc);
        }
        return std::sqrt(err_sq / static_cast<double>(dim));
    }
};

double pi_factor(double err, double err_prev, bool after_reject) {
    if (!(err > 0.0)) return 5.0;
    double fac = 0.9 * std::pow(err, -0.14) * std::pow(err_prev, 0.08);
    const double fac_max = after_reject ? 1.0 : 5.0;
    return std::clamp(fac, 0.2, fac_max);
}

struct RefineResult {
    double t;
    std::vector<double> state;
};

// Locate the first d_min < eps crossing inside (t_lo, t_hi]. First an
// event-aware advance localizes the crossing to one cap-limited micro-step
// (the d_min^2 cap keeps that bracket far narrower than the collision
// singularity's distance), then bisection polishes it below 1e-9 * max(1, t).
// The singularity itself (d_min = 0) lies beyond the bracket, so every
// sub-integration stays in the regular region.
std::optional<RefineResult> refine_raw(std::vector<double> y_lo, std::span<const int> m,
                                       double t_lo, double t_hi, double eps, double rel_tol,
                                       double abs_tol, double dt_max) {
    const double tol_rel = std::min(rel_tol, 1e-12);
    const double tol_abs = std::min(abs_tol, 1e-14);
    DopriStepper stepper(m, y_lo.size());

    double lo = t_lo;
    double hi = -1.0;
    std::vector<double> y_hi;
    {
        double t = t_lo;
        std::vector<double> y = y_lo;
        double dt = t_hi - t_lo;
        while (t < t_hi) {
            const double dmin = detail::min_pair_distance_raw(y);
            const double h = std::min({dt, dt_max, kDminStepFactor * dmin * dmin, t_hi - t});
            if (!(t + h > t)) throw std::runtime_error("time step underflow in refinement");
            const double err = stepper.attempt(y, h, tol_rel, tol_abs);
            if (!(err <= 1.0)) {
                dt = h * (std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1);
                continue;
            }
            const double t_new = h == t_hi - t ? t_hi : t + h;
            if (detail::min_pair_distance_raw(stepper.y5) < eps) {
                lo = t;
                y_lo = y;
                hi = t_new;
                y_hi = stepper.y5;
                break;
            }
            y = stepper.y5;
            t = t_new;
            dt = h * (err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0);
        }
        if (hi < 0.0) return std::nullopt;  // no crossing up to t_hi
    }

    while (hi - lo > 1e-9 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        std::vector<double> y_mid = y_lo;
        detail::advance_raw(y_mid, m, lo, mid, tol_rel, tol_abs, dt_max);
        if (detail::min_pair_distance_raw(y_mid) < eps) {
            hi = mid;
            y_hi = std::move(y_mid);
        } else {
            lo = mid;
            y_lo = std::move(y_mid);
        }
    }
    return RefineResult{hi, std::move(y_hi)};
}

CollisionEvent make_collision_event(const VortexConfiguration& at_collision, double t,
                                    double eps) {
    CollisionEvent ev;
    ev.t_collision = t;
    ev.clusters = classify_clusters(at_collision, eps);
    ev.centroids = cluster_centroids(at_collision, ev.clusters);
    return ev;
}

}  // namespace

void StepControl::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max))
        throw std::invalid_argument("need 0 < dt_min <= dt_init <= dt_max");
    if (!(collision_eps > 1e-12))
        throw std::invalid_argument("collision_eps must exceed 1e-12");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (!(sample_interval > 0.0)) throw std::invalid_argument("sample_interval must be positive");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
}

std::vector<Vec2> CollisionEvent::locations() const {
    std::vector<Vec2> out;
    for (size_t i = 0; i < clusters.size(); ++i)
        if (clusters[i].size() >= 2) out.push_back(centroids[i]);
    return out;
}

const char* terminal_kind_name(TerminalKind kind) {
    switch (kind) {
        case TerminalKind::ReachedEnd: return "reached_end";
        case TerminalKind::Collision: return "collision";
        case TerminalKind::StepFloor: return "step_floor";
        case TerminalKind::StepBudget: return "step_budget";
    }
    return "unknown";
}

namespace detail {

void advance_raw(std::vector<double>& xy, std::span<const int> m, double t0, double t1,
                 double rel_tol, double abs_tol, double dt_max) {
    if (t1 <= t0) return;
    DopriStepper stepper(m, xy.size());
    double t = t0;
    double dt = std::min(dt_max, t1 - t0);
    double err_prev = 1e-4;
    bool after_reject = false;
    while (t < t1) {
        const double dmin = min_pair_distance_raw(xy);
        double h = std::min({dt, dt_max, kDminStepFactor * dmin * dmin, t1 - t});
        const bool final_step = h == t1 - t;
        if (!(t + h > t)) throw std::runtime_error("time step underflow while advancing");
        const double err = stepper.attempt(xy, h, rel_tol, abs_tol);
        if (err <= 1.0) {
            t = final_step ? t1 : t + h;
            xy = stepper.y5;
            dt = h * pi_factor(err, err_prev, after_reject);
            err_prev = std::max(err, 1e-4);
            after_reject = false;
        } else {
            dt = h * (std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1);
            after_reject = true;
        }
    }
}

}  // namespace detail

double refine_collision_time(const VortexConfiguration& before, double t_before,
                             double t_after, double eps, const StepControl& control) {
    if (t_after <= t_before) throw std::invalid_argument("empty refinement bracket");
    std::vector<double> y0 = detail::to_flat(before.positions());
    if (detail::min_pair_distance_raw(y0) < eps)
        throw std::invalid_argument("d_min already below eps at the bracket start");
    const std::vector<int> m = winding_values(before.windings());
    const auto hit = refine_raw(std::move(y0), m, t_before, t_after, eps, control.rel_tol,
                                control.abs_tol, control.dt_max);
    if (!hit) throw NoCrossingError("d_min does not cross eps inside the bracket");
    return hit->t;
}

std::vector<std::vector<int>> classify_clusters(const VortexConfiguration& at_collision,
                                                double eps) {
    const int n = at_collision.size();
    if (min_pairwise_distance(at_collision).value >= eps)
        throw std::invalid_argument("no pair within eps; nothing to classify");
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a) a = parent[static_cast<size_t>(a)];
        return a;
    };
    const double link = 2.0 * eps;
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
            if (norm(at_collision.position(j) - at_collision.position(l)) <= link) {
                const int rj = find(j), rl = find(l);
                if (rj != rl) parent[static_cast<size_t>(std::max(rj, rl))] = std::min(rj, rl);
            }
    std::vector<std::vector<int>> clusters;
    std::vector<int> root_to_cluster(static_cast<size_t>(n), -1);
    for (int j = 0; j < n; ++j) {
        const int r = find(j);
        if (root_to_cluster[static_cast<size_t>(r)] < 0) {
            root_to_cluster[static_cast<size_t>(r)] = static_cast<int>(clusters.size());
            clusters.emplace_back();
        }
        clusters[static_cast<size_t>(root_to_cluster[static_cast<size_t>(r)])].push_back(j);
    }
    return clusters;  // already ordered by smallest member, members ascending
}

std::vector<Vec2> cluster_centroids(const VortexConfiguration& config,
                                    const std::vector<std::vector<int>>& clusters) {
    std::vector<Vec2> out;
    out.reserve(clusters.size());
    for (const auto& cluster : clusters) {
        Vec2 c;
        for (int j : cluster) c += config.position(j);
        out.push_back((1.0 / static_cast<double>(cluster.size())) * c);
    }
    return out;
}

Trajectory integrate(const VortexConfiguration& initial, const StepControl& control) {
    return integrate(initial, control, {});
}

Trajectory integrate(const VortexConfiguration& initial, const StepControl& control,
                     std::span<const double> sample_times) {
    control.validate();
    const std::vector<int> m = winding_values(initial.windings());
    std::vector<double> y = detail::to_flat(initial.positions());

    Trajectory traj;
    auto config_at = [&](const std::vector<double>& state) {
        return VortexConfiguration(detail::to_vec2(state), initial.windings());
    };
    auto record = [&](double t, const std::vector<double>& state) {
        if (!traj.times.empty() && traj.times.back() == t) return;
        traj.times.push_back(t);
        traj.states.push_back(config_at(state));
    };
    record(0.0, y);

    if (detail::min_pair_distance_raw(y) < control.collision_eps) {
        traj.terminal = {TerminalKind::Collision, 0.0,
                         make_collision_event(traj.states.front(), 0.0, control.collision_eps)};
        return traj;
    }

    DopriStepper stepper(m, y.size());
    double t = 0.0;
    double dt = control.dt_init;
    double err_prev = 1e-4;
    bool after_reject = false;
    long sample_idx = 1;
    size_t grid_pos = 0;
    const bool explicit_grid = !sample_times.empty();
    auto next_sample_time = [&]() {
        if (!explicit_grid) return control.sample_interval * static_cast<double>(sample_idx);
        while (grid_pos < sample_times.size() && sample_times[grid_pos] <= t)
            ++grid_pos;
        return grid_pos < sample_times.size() ? sample_times[grid_pos]
                                              : std::numeric_limits<double>::infinity();
    };
    long steps = 0;

    auto finish = [&](TerminalKind kind, double t_term) {
        record(t_term, y);
        traj.terminal = {kind, t_term, std::nullopt};
    };

    while (true) {
        if (t >= control.t_end) {
            traj.terminal = {TerminalKind::ReachedEnd, t, std::nullopt};
            return traj;
        }
        if (steps >= control.max_steps) {
            finish(TerminalKind::StepBudget, t);
            return traj;
        }

        const double next_sample = next_sample_time();
        const double dmin = detail::min_pair_distance_raw(y);
        double h = std::min({dt, control.dt_max, kDminStepFactor * dmin * dmin});
        // The dt_min floor is a stiffness trap for the error controller; steps
        // clipped by the d_min^2 cap, a sample boundary, or t_end are exempt
        // (near a collision the cap legitimately drives h below any floor).
        const bool error_limited = h == dt;
        double t_target = t + h;
        bool hit_sample = false, hit_end = false;
        if (next_sample <= t_target && next_sample <= control.t_end) {
            t_target = next_sample;
            hit_sample = true;
        }
        if (control.t_end <= t_target) {
            t_target = control.t_end;
            hit_end = true;
            hit_sample = next_sample == control.t_end;
        }
        h = t_target - t;
        if (!(t + h > t)) {
            finish(TerminalKind::StepFloor, t);
            return traj;
        }

        ++steps;
        const double err = stepper.attempt(y, h, control.rel_tol, control.abs_tol);
        if (!(err <= 1.0)) {  // also catches NaN from a degenerate stage
            dt = h * (std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1);
            after_reject = true;
            if (error_limited && dt < control.dt_min) {
                finish(TerminalKind::StepFloor, t);
                return traj;
            }
            continue;
        }

        const std::vector<double> y_prev = y;
        const double t_prev = t;
        y = stepper.y5;
        t = t_target;
        dt = h * pi_factor(err, err_prev, after_reject);
        err_prev = std::max(err, 1e-4);
        after_reject = false;

        if (detail::min_pair_distance_raw(y) < control.collision_eps) {
            auto hit = refine_raw(y_prev, m, t_prev, t, control.collision_eps,
                                  control.rel_tol, control.abs_tol, control.dt_max);
            // A graze that the tighter refinement pass does not reproduce is
            // settled at the step's own resolution.
            double t_col = t;
            if (hit) {
                t_col = hit->t;
                y = std::move(hit->state);
            }
            record(t_col, y);
            traj.terminal = {TerminalKind::Collision, t_col,
                             make_collision_event(traj.states.back(), t_col,
                                                  control.collision_eps)};
            return traj;
        }

        if (hit_sample) {
            record(t, y);
            ++sample_idx;
        }
        if (hit_end) {
            record(t, y);
            traj.terminal = {TerminalKind::ReachedEnd, t, std::nullopt};
            return traj;
        }
    }
}

}  // namespace vortex
