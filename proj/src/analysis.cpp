#include "vortex/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;

struct PolarOrder {
    std::array<double, 3> r;
    std::array<double, 3> theta;  // ascending in [0, 2pi)
};

PolarOrder polar_sorted(const VortexConfiguration& config) {
    if (config.size() != 3 || !config.same_winding())
        throw std::invalid_argument("needs 3 same-sign vortices");
    if (norm(config.mass_center()) > 1e-8)
        throw std::invalid_argument("needs the mass center at the origin");
    std::array<std::pair<double, double>, 3> by_angle;  // (theta, r)
    for (int j = 0; j < 3; ++j) {
        const Vec2 p = config.position(j);
        double a = std::atan2(p.y, p.x);
        if (a < 0.0) a += 2.0 * kPi;
        by_angle[static_cast<size_t>(j)] = {a, norm(p)};
    }
    std::sort(by_angle.begin(), by_angle.end());
    PolarOrder out;
    for (size_t j = 0; j < 3; ++j) {
        out.theta[j] = by_angle[j].first;
        out.r[j] = by_angle[j].second;
    }
    return out;
}

// Alignment score against the unit equilateral reference rotated by theta;
// the squared distance at the r-optimum is ||X||^2 - max(q, 0)^2 / 3.
double alignment(const PolarOrder& p, double theta) {
    double q = 0.0;
    for (size_t j = 0; j < 3; ++j)
        q += p.r[j] * std::cos(p.theta[j] - theta - 2.0 * kPi * static_cast<double>(j) / 3.0);
    return q;
}

double distance_from_alignment(const PolarOrder& p, double q) {
    const double x2 = p.r[0] * p.r[0] + p.r[1] * p.r[1] + p.r[2] * p.r[2];
    const double gain = std::max(q, 0.0);
    return std::sqrt(std::max(x2 - gain * gain / 3.0, 0.0));
}

}  // namespace

InvariantReport invariant_report(const Trajectory& traj) {
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
    InvariantReport rep;
    const IntegralSet first = integral_set(traj.states.front(), traj.times.front());
    double prev_energy = first.energy;
    for (size_t k = 0; k < traj.states.size(); ++k) {
        const double t = traj.times[k];
        const IntegralSet s = integral_set(traj.states[k], t);
        auto update = [t](DriftSample& d, double value) {
            if (value > d.value) d = {value, t};
        };
        update(rep.h1, std::abs(s.h1 - first.h1));
        update(rep.h2, std::abs(s.h2 - first.h2));
        update(rep.h3, std::abs(s.h3 - first.h3));
        update(rep.mass_center, norm(s.mass_center - first.mass_center));
        if (k > 0) update(rep.energy_increase, std::max(s.energy - prev_energy, 0.0));
        prev_energy = s.energy;
    }
    return rep;
}

std::optional<std::pair<double, double>> dmin_monotone_check(const Trajectory& traj) {
    if (traj.states.size() < 2) throw std::invalid_argument("need at least 2 samples");
    double prev = min_pairwise_distance(traj.states.front()).value;
    for (size_t k = 1; k < traj.states.size(); ++k) {
        const double cur = min_pairwise_distance(traj.states[k]).value;
        if (cur < prev - 1e-10) return std::make_pair(traj.times[k], prev - cur);
        prev = cur;
    }
    return std::nullopt;
}

double orbital_distance(const VortexConfiguration& config) {
    const PolarOrder p = polar_sorted(config);
    // Coarse scan, then golden-section on the best bracket.
    constexpr int kGrid = 720;
    double best_theta = 0.0, best_q = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double theta = 2.0 * kPi * i / kGrid;
        const double q = alignment(p, theta);
        if (q > best_q) {
            best_q = q;
            best_theta = theta;
        }
    }
    const double step = 2.0 * kPi / kGrid;
    double lo = best_theta - step, hi = best_theta + step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = alignment(p, x1), f2 = alignment(p, x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = alignment(p, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = alignment(p, x1);
        }
    }
    const double q = alignment(p, 0.5 * (lo + hi));
    return distance_from_alignment(p, std::max(q, best_q));
}

double orbital_distance_reference_gauge(const VortexConfiguration& config) {
    const PolarOrder p = polar_sorted(config);
    return distance_from_alignment(p, alignment(p, p.theta[0]));
}

double phase_p_value(double phi1, double phi2) {
    const double s1 = std::sin(phi1), s2 = std::sin(phi2), s12 = std::sin(phi1 + phi2);
    const double d = s1 * s1 + s2 * s2 + s12 * s12;
    const double bracket = s2 - s12 * std::cos(phi1 - 2.0 * kPi / 3.0) +
                           s1 * std::cos(phi1 + phi2 - 4.0 * kPi / 3.0);
    return bracket * bracket / d;
}

double equilateral_distance_formula(const VortexConfiguration& config, double t, double h3_0) {
    const PolarOrder p = polar_sorted(config);
    const double phi1 = p.theta[1] - p.theta[0];
    const double phi2 = p.theta[2] - p.theta[1];
    const double gap = std::max(3.0 - phase_p_value(phi1, phi2), 0.0);
    return std::sqrt((12.0 * t + h3_0) * gap / 3.0);
}

std::optional<std::pair<double, double>> dmin_first_local_minimum(const Trajectory& traj) {
    if (traj.states.size() < 3) return std::nullopt;
    std::vector<double> d(traj.states.size());
    for (size_t k = 0; k < traj.states.size(); ++k)
        d[k] = min_pairwise_distance(traj.states[k]).value;
    for (size_t k = 1; k + 1 < d.size(); ++k)
        if (d[k] < d[k - 1] && d[k] <= d[k + 1])
            return std::make_pair(traj.times[k], d[k]);
    return std::nullopt;
}

std::vector<PhaseState> phase_trajectory(const Trajectory& traj, double h3_0) {
    if (traj.states.empty()) throw std::invalid_argument("empty trajectory");
    if (traj.states.front().size() != 3 || !traj.states.front().same_winding())
        throw std::invalid_argument("needs 3 same-sign vortices");
    // fix the label order by the initial polar angles
    std::array<std::pair<double, int>, 3> initial;
    for (int j = 0; j < 3; ++j) {
        const Vec2 p = traj.states.front().position(j);
        double a = std::atan2(p.y, p.x);
        if (a < 0.0) a += 2.0 * kPi;
        initial[static_cast<size_t>(j)] = {a, j};
    }
    std::sort(initial.begin(), initial.end());
    std::array<int, 3> order{};
    std::array<double, 3> angle{};
    for (size_t k = 0; k < 3; ++k) {
        order[k] = initial[k].second;
        angle[k] = initial[k].first;
    }

    std::vector<PhaseState> out;
    out.reserve(traj.states.size());
    for (size_t k = 0; k < traj.states.size(); ++k) {
        for (size_t l = 0; l < 3; ++l) {
            const Vec2 p = traj.states[k].position(order[l]);
            const double raw = std::atan2(p.y, p.x);
            // unwrap onto the branch closest to the previous sample
            const double turns = std::round((angle[l] - raw) / (2.0 * kPi));
            angle[l] = raw + 2.0 * kPi * turns;
        }
        PhaseState ps;
        ps.phi1 = angle[1] - angle[0];
        ps.phi2 = angle[2] - angle[1];
        ps.psi = {ps.phi1 - 2.0 * kPi / 3.0, ps.phi2 - 2.0 * kPi / 3.0};
        ps.s = 0.25 * std::log((12.0 * traj.times[k] + h3_0) / h3_0);
        out.push_back(ps);
    }
    return out;
}

PatternVerdict classify_three_vortex(const VortexConfiguration& config,
                                     std::optional<StepControl> control) {
    if (config.size() != 3) throw std::invalid_argument("needs exactly 3 vortices");
    if (std::abs(pair_sum_m0(config.windings()) + 1.0) > 1e-15)
        throw std::invalid_argument("needs mixed windings (M0 = -1)");
    const double h1_0 = integral_set(config, 0.0).h1;
    const double t_bound = h1_0 / 12.0;

    StepControl ctl = control.value_or(StepControl{});
    if (!control) {
        ctl.t_end = 1.05 * t_bound + 0.05;
        ctl.sample_interval = std::max(t_bound / 200.0, 1e-4);
    }
    const Trajectory traj = integrate(config, ctl);

    PatternVerdict verdict;
    if (traj.terminal.kind != TerminalKind::Collision) return verdict;

    const CollisionEvent& ev = *traj.terminal.collision;
    verdict.t_collision = ev.t_collision;
    verdict.t_upper_bound = t_bound;
    for (size_t i = 0; i < ev.clusters.size(); ++i) {
        if (ev.clusters[i].size() == 3) {
            verdict.kind = ThreeVortexCase::AllThreeCollide;
            verdict.collision_location = ev.centroids[i];
            return verdict;
        }
        if (ev.clusters[i].size() == 2) {
            verdict.kind = ThreeVortexCase::PairCollides;
            verdict.pair = std::make_pair(ev.clusters[i][0], ev.clusters[i][1]);
            verdict.collision_location = ev.centroids[i];
            return verdict;
        }
    }
    return verdict;
}

double estimate_slope(std::span<const double> times, std::span<const double> values,
                      double window_fraction) {
    if (times.size() != values.size()) throw std::invalid_argument("length mismatch");
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw std::invalid_argument("window fraction must be in (0, 1]");
    const size_t total = times.size();
    const size_t window = static_cast<size_t>(std::llround(window_fraction * total));
    if (window < 10) throw std::invalid_argument("need at least 10 samples in the window");
    const size_t start = total - window;
    double t_mean = 0.0, v_mean = 0.0;
    for (size_t k = start; k < total; ++k) {
        t_mean += times[k];
        v_mean += values[k];
    }
    t_mean /= static_cast<double>(window);
    v_mean /= static_cast<double>(window);
    double num = 0.0, den = 0.0;
    for (size_t k = start; k < total; ++k) {
        const double dt = times[k] - t_mean;
        num += dt * (values[k] - v_mean);
        den += dt * dt;
    }
    if (den == 0.0) throw std::invalid_argument("degenerate time window");
    return num / den;
}

}  // namespace vortex
