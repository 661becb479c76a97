#include "vortex/batch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "vortex/analysis.hpp"
#include "vortex/analytic.hpp"
#include "vortex/integrator.hpp"
#include "vortex/reduced.hpp"

#ifdef VORTEX_HAVE_OPENMP
#include <omp.h>
#endif

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

std::vector<Vec2> random_positions(Rng& rng, int n, double box, double min_sep) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Vec2> pts;
        pts.reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            pts.push_back({rng.uniform(-box, box), rng.uniform(-box, box)});
        double dmin = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            for (int l = j + 1; l < n; ++l)
                dmin = std::min(dmin, norm(pts[static_cast<size_t>(j)] -
                                           pts[static_cast<size_t>(l)]));
        if (dmin >= min_sep) return pts;
    }
    throw std::runtime_error("could not draw separated random positions");
}

std::vector<WindingNumber> random_windings(Rng& rng, int n, WindingMode mode) {
    switch (mode) {
        case WindingMode::AllPlus: return uniform_windings(n, 1);
        case WindingMode::AllMinus: return uniform_windings(n, -1);
        case WindingMode::Mixed: {
            for (;;) {
                std::vector<WindingNumber> w;
                bool plus = false, minus = false;
                for (int j = 0; j < n; ++j) {
                    const int v = rng.coin() ? 1 : -1;
                    (v > 0 ? plus : minus) = true;
                    w.push_back(WindingNumber(v));
                }
                if (plus && minus) return w;
            }
        }
        case WindingMode::M0Negative: {
            for (;;) {
                std::vector<WindingNumber> w;
                for (int j = 0; j < n; ++j) w.push_back(WindingNumber(rng.coin() ? 1 : -1));
                if (pair_sum_m0(w) < 0.0) return w;
            }
        }
        case WindingMode::M0ZeroQuad: {
            if (n != 4) throw std::invalid_argument("M0ZeroQuad needs n = 4");
            std::vector<WindingNumber> w = uniform_windings(4, 1);
            w[static_cast<size_t>(rng.uniform_int(0, 3))] = WindingNumber::minus();
            return w;
        }
    }
    throw std::logic_error("unhandled winding mode");
}

VortexConfiguration random_config(Rng& rng, int n, WindingMode mode, double box,
                                  double min_sep) {
    return {random_positions(rng, n, box, min_sep), random_windings(rng, n, mode)};
}

VortexConfiguration random_collinear_config(Rng& rng, int n, WindingMode mode) {
    std::vector<double> offsets(static_cast<size_t>(n));
    double a = 0.0;
    for (int j = 0; j < n; ++j) {
        offsets[static_cast<size_t>(j)] = a;
        a += rng.uniform(0.35, 1.0);
    }
    const double mean = std::accumulate(offsets.begin(), offsets.end(), 0.0) / n;
    for (double& o : offsets) o -= mean;
    CollinearReduction red{{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)},
                           unit_vector(rng.uniform(0.0, 2.0 * kPi)),
                           offsets};
    return lift_collinear(red, random_windings(rng, n, mode));
}

VortexConfiguration random_mixed_triangle(Rng& rng, bool isoceles) {
    if (isoceles) {
        // The equidistant collision manifold is unstable: any last-ulp
        // asymmetry grows into a pair collision before the eps threshold.
        // Build in the mirror frame (pair at bit-exact +-x, apex on the
        // y axis), which IEEE arithmetic preserves along the whole flow.
        const double arm = rng.uniform(0.6, 1.8);
        const double gamma = rng.uniform(0.4, kPi - 0.4);
        const double a = arm * std::sin(0.5 * gamma);
        const double b = -arm * std::cos(0.5 * gamma);
        const double y_shift = rng.uniform(-0.5, 0.5);
        std::vector<Vec2> pts{{-a, b + y_shift}, {0.0, y_shift}, {a, b + y_shift}};
        return {std::move(pts), make_windings({1, -1, 1})};
    }
    const double d12 = rng.uniform(0.6, 1.8);
    const double ratio = rng.uniform(1.05, 2.0);
    const double d23 = rng.coin() ? d12 * ratio : d12 / ratio;
    const double gamma = rng.uniform(0.4, kPi - 0.4);
    const double rot = rng.uniform(0.0, 2.0 * kPi);
    const Vec2 shift{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    std::vector<Vec2> pts{shift + d12 * unit_vector(rot + 0.5 * gamma),
                          shift,
                          shift + d23 * unit_vector(rot - 0.5 * gamma)};
    return {std::move(pts), make_windings({1, -1, 1})};
}

VortexConfiguration random_near_equilateral(Rng& rng, double psi_cap) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Vec2> pts;
        for (int j = 0; j < 3; ++j) {
            const double r = 1.0 + rng.uniform(-0.02, 0.02);
            const double th = 2.0 * kPi * j / 3.0 + rng.uniform(-0.012, 0.012);
            pts.push_back(r * unit_vector(th));
        }
        Vec2 c;
        for (const Vec2& p : pts) c += p;
        c *= 1.0 / 3.0;
        for (Vec2& p : pts) p -= c;
        VortexConfiguration config{pts, uniform_windings(3)};
        const double h3_0 = integral_set(config, 0.0).h3;
        const PhaseState ps = phase_state(config, 0.0, h3_0);
        if (norm(ps.psi) <= psi_cap && norm(ps.psi) > 1e-4) return config;
    }
    throw std::runtime_error("could not draw a near-equilateral triangle");
}

void parallel_for_index(int count, bool parallel, const std::function<void(int)>& body) {
#ifdef VORTEX_HAVE_OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < count; ++i) body(i);
}

// ---------------------------------------------------------------------------
// Verify suites. Each runs `samples` seeded cases (parallel over samples) and
// reports the worst observed margin against its gate.

namespace {

struct SampleOutcome {
    double worst = 0.0;
    bool ok = true;
    std::string note;
};

PropertyResult aggregate(const std::string& name, double tolerance,
                         std::vector<SampleOutcome>& outcomes) {
    PropertyResult res;
    res.name = name;
    res.tolerance = tolerance;
    res.samples = static_cast<int>(outcomes.size());
    res.pass = true;
    for (const SampleOutcome& s : outcomes) {
        res.worst = std::max(res.worst, s.worst);
        if (!s.ok) {
            res.pass = false;
            if (res.note.empty()) res.note = s.note;
        }
    }
    if (res.worst > tolerance) res.pass = false;
    return res;
}

using SuiteFn = PropertyResult (*)(uint64_t, int, bool);

PropertyResult run_sampled(const std::string& name, double tolerance, uint64_t seed,
                           int samples, bool parallel,
                           const std::function<double(Rng&)>& metric) {
    std::vector<SampleOutcome> outcomes(static_cast<size_t>(samples));
    parallel_for_index(samples, parallel, [&](int i) {
        Rng rng = Rng::for_sample(seed, static_cast<uint64_t>(i));
        try {
            outcomes[static_cast<size_t>(i)].worst = metric(rng);
        } catch (const std::exception& e) {
            outcomes[static_cast<size_t>(i)] = {std::numeric_limits<double>::infinity(), false,
                                                e.what()};
        }
    });
    return aggregate(name, tolerance, outcomes);
}

double fd_gradient_error(Rng& rng) {
    const int n = rng.uniform_int(2, 6);
    const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
    const std::vector<Vec2> v = velocity_field(config);
    double vmax = 0.0;
    for (const Vec2& u : v) vmax = std::max(vmax, norm(u));
    const double h = 1e-5;
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int axis = 0; axis < 2; ++axis) {
            auto shifted = [&](double delta) {
                std::vector<Vec2> pts = config.positions();
                (axis == 0 ? pts[static_cast<size_t>(j)].x : pts[static_cast<size_t>(j)].y) +=
                    delta;
                return interaction_energy({std::move(pts), config.windings()});
            };
            const double grad = (shifted(h) - shifted(-h)) / (2.0 * h);
            const double vi = axis == 0 ? v[static_cast<size_t>(j)].x
                                        : v[static_cast<size_t>(j)].y;
            worst = std::max(worst, std::abs(vi + grad) / std::max(vmax, 1e-12));
        }
    }
    return worst;
}

PropertyResult suite_gradient_flow(uint64_t seed, int samples, bool parallel) {
    return run_sampled("gradient-flow", 1e-5, seed, samples, parallel, fd_gradient_error);
}

PropertyResult suite_complex_form(uint64_t seed, int samples, bool parallel) {
    return run_sampled("complex-form", 1e-12, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
        const auto v = velocity_field(config);
        const auto vc = velocity_field_complex(config);
        double scale = 1.0, worst = 0.0;
        for (const Vec2& u : v) scale = std::max(scale, norm(u));
        for (size_t j = 0; j < v.size(); ++j)
            worst = std::max(worst, norm(v[j] - vc[j]) / scale);
        return worst;
    });
}

PropertyResult suite_velocity_sum(uint64_t seed, int samples, bool parallel) {
    return run_sampled("velocity-sum", 1e-11, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 8);
        const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
        Vec2 sum;
        double scale = 1.0;
        for (const Vec2& u : velocity_field(config)) {
            sum += u;
            scale = std::max(scale, norm(u));
        }
        return norm(sum) / scale;
    });
}

PropertyResult suite_m0_closed_form(uint64_t seed, int samples, bool parallel) {
    (void)seed;
    (void)samples;
    (void)parallel;
    // Exhaustive over all winding assignments, N <= 8.
    double worst = 0.0;
    int count = 0;
    for (int n = 2; n <= 8; ++n) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<WindingNumber> w;
            for (int j = 0; j < n; ++j)
                w.push_back(WindingNumber(((mask >> j) & 1) != 0 ? 1 : -1));
            double direct = 0.0;
            for (int j = 0; j < n; ++j)
                for (int l = j + 1; l < n; ++l)
                    direct += w[static_cast<size_t>(j)].value() *
                              w[static_cast<size_t>(l)].value();
            worst = std::max(worst, std::abs(direct - pair_sum_m0(w)));
            ++count;
        }
    }
    return {"m0-closed-form", worst <= 0.0, count, worst, 0.0, ""};
}

PropertyResult suite_h_identity(uint64_t seed, int samples, bool parallel) {
    return run_sampled("h-identity", 1e-11, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 8);
        const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
        const double t = rng.uniform(0.0, 5.0);
        const IntegralSet s = integral_set(config, t);
        const double lhs = s.h2;
        const double rhs = (s.h1 + s.h3) / (2.0 * (n - 1));
        return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
    });
}

PropertyResult suite_scaling_covariance(uint64_t seed, int samples, bool parallel) {
    return run_sampled("scaling-covariance", 1e-11, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
        const double alpha = rng.uniform(0.3, 3.0);
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        const auto v = velocity_field(config);
        const auto v_scaled = velocity_field(scaled(config, alpha));
        const auto v_rot = velocity_field(rotated(config, theta));
        double scale = 1e-12, worst = 0.0;
        for (const Vec2& u : v) scale = std::max(scale, norm(u));
        for (size_t j = 0; j < v.size(); ++j) {
            worst = std::max(worst, norm(v_scaled[j] - (1.0 / alpha) * v[j]) / scale);
            worst = std::max(worst, norm(v_rot[j] - rotated(v[j], theta)) / scale);
        }
        return worst;
    });
}

StepControl tight_control(double t_end) {
    StepControl c;
    c.rel_tol = 1e-10;
    c.abs_tol = 1e-12;
    c.t_end = t_end;
    c.sample_interval = std::max(t_end / 100.0, 1e-3);
    return c;
}

PropertyResult suite_first_integrals(uint64_t seed, int samples, bool parallel) {
    return run_sampled("first-integrals", 1e-6, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
        const Trajectory traj = integrate(config, tight_control(1.0));
        const InvariantReport rep = invariant_report(traj);
        return std::max({rep.h1.value, rep.h2.value, rep.h3.value});
    });
}

PropertyResult suite_mass_center(uint64_t seed, int samples, bool parallel) {
    return run_sampled("mass-center", 1e-9, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
        return invariant_report(integrate(config, tight_control(1.0))).mass_center.value;
    });
}

PropertyResult suite_energy_dissipation(uint64_t seed, int samples, bool parallel) {
    return run_sampled("energy-dissipation", 1e-9, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed);
        return invariant_report(integrate(config, tight_control(1.0))).energy_increase.value;
    });
}

PropertyResult suite_same_sign_no_collision(uint64_t seed, int samples, bool parallel) {
    return run_sampled("same-sign-no-collision", 0.0, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config = random_config(rng, n, WindingMode::AllPlus);
        const Trajectory traj = integrate(config, tight_control(10.0));
        return traj.terminal.kind == TerminalKind::Collision ? 1.0 : 0.0;
    });
}

PropertyResult suite_dmin_monotone_n4(uint64_t seed, int samples, bool parallel) {
    return run_sampled("dmin-monotone-N4", 0.0, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 4);
        StepControl c = tight_control(10.0);
        c.rel_tol = 1e-12;
        c.abs_tol = 1e-14;
        const VortexConfiguration config = random_config(rng, n, WindingMode::AllPlus);
        return dmin_monotone_check(integrate(config, c)) ? 1.0 : 0.0;
    });
}

PropertyResult suite_dmin_monotone_collinear(uint64_t seed, int samples, bool parallel) {
    return run_sampled("dmin-monotone-collinear", 0.0, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 8);
        StepControl c = tight_control(10.0);
        c.rel_tol = 1e-12;
        c.abs_tol = 1e-14;
        const VortexConfiguration config = random_collinear_config(rng, n, WindingMode::AllPlus);
        return dmin_monotone_check(integrate(config, c)) ? 1.0 : 0.0;
    });
}

PropertyResult suite_m0_negative_bound(uint64_t seed, int samples, bool parallel) {
    return run_sampled("m0-negative-bound", 1e-3, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config = random_config(rng, n, WindingMode::M0Negative);
        const IntegralSet s0 = integral_set(config, 0.0);
        const double t_a = *collision_upper_bound(s0.h1, n, s0.m0);
        const Trajectory traj = integrate(config, tight_control(t_a + 0.1));
        if (traj.terminal.kind != TerminalKind::Collision)
            throw std::runtime_error("M0 < 0 run ended without a collision");
        return std::max(traj.terminal.collision->t_collision - t_a, 0.0);
    });
}

PropertyResult suite_m0_zero_bounded(uint64_t seed, int samples, bool parallel) {
    return run_sampled("m0-zero-bounded", 1e-6, seed, samples, parallel, [](Rng& rng) {
        const VortexConfiguration config = random_config(rng, 4, WindingMode::M0ZeroQuad);
        const double bound = std::sqrt(integral_set(config, 0.0).h2);
        const Trajectory traj = integrate(config, tight_control(10.0));
        double worst = 0.0;
        for (const VortexConfiguration& state : traj.states)
            for (const Vec2& p : state.positions())
                worst = std::max(worst, norm(p) - bound);
        return std::max(worst, 0.0);
    });
}

PropertyResult suite_theorem_35(uint64_t seed, int samples, bool parallel) {
    return run_sampled("theorem-3.5", 0.0, seed, samples, parallel, [](Rng& rng) {
        const bool isoceles = rng.coin();
        const VortexConfiguration config = random_mixed_triangle(rng, isoceles);
        const Vec2 center = config.mass_center();
        const double t_bound = integral_set(config, 0.0).h1 / 12.0;
        const PatternVerdict verdict = classify_three_vortex(config);
        if (isoceles) {
            if (verdict.kind != ThreeVortexCase::AllThreeCollide) return 1.0;
            if (std::abs(*verdict.t_collision - t_bound) > 1e-3 * t_bound) return 1.0;
            if (norm(*verdict.collision_location - center) > 1e-5) return 1.0;
        } else {
            if (verdict.kind != ThreeVortexCase::PairCollides) return 1.0;
            if (!(*verdict.t_collision < t_bound)) return 1.0;
            // the closer pair is (0,1) or (1,2) depending on the arm lengths
            const double d01 = norm(config.position(0) - config.position(1));
            const double d12 = norm(config.position(1) - config.position(2));
            const std::pair<int, int> expect = d01 < d12 ? std::make_pair(0, 1)
                                                         : std::make_pair(1, 2);
            if (*verdict.pair != expect) return 1.0;
        }
        return 0.0;
    });
}

PropertyResult suite_ring_sum_rules(uint64_t seed, int samples, bool parallel) {
    return run_sampled("ring-sum-rules", 1e-12, seed, samples, parallel, [](Rng& rng) {
        double worst = 0.0;
        for (RingVariant v : kAllRingVariants) {
            const int n = rng.uniform_int(2, 6);
            const double rho1 = rng.uniform(0.2, 3.0);
            const RingSystem sys{v, n, rho1, rho1 + rng.uniform(0.2, 5.0)};
            const Vec2 rhs = ring_rhs(sys);
            worst = std::max(worst, std::abs(rhs.x + rhs.y - ring_sum_constant(v, n)) /
                                        std::max(1.0, std::abs(ring_sum_constant(v, n))));
        }
        return worst;
    });
}

PropertyResult suite_ring_kernel(uint64_t seed, int samples, bool parallel) {
    (void)seed;
    (void)samples;
    (void)parallel;
    double worst = 0.0;
    int count = 0;
    for (int n = 2; n <= 12; ++n) {
        for (double x : {1.1, 2.0, 10.0}) {
            for (bool staggered : {false, true}) {
                double direct = 0.0;
                for (int j = 1; j <= n; ++j) {
                    const double ang =
                        2.0 * kPi * (j - 1) / n + (staggered ? kPi / n : 0.0);
                    direct += (x * x - 1.0) / (x * x + 1.0 - 2.0 * x * std::cos(ang));
                }
                const double closed = ring_kernel_sum(x, n, staggered);
                worst = std::max(worst, std::abs(direct - closed) / std::abs(closed));
                ++count;
            }
        }
    }
    return {"ring-kernel", worst <= 1e-12, count, worst, 1e-12, ""};
}

PropertyResult suite_lift_reduce(uint64_t seed, int samples, bool parallel) {
    return run_sampled("lift-reduce", 1e-6, seed, samples, parallel, [](Rng& rng) {
        const RingVariant v = kAllRingVariants[static_cast<size_t>(rng.uniform_int(0, 7))];
        const int n = rng.uniform_int(2, 3);
        RingSystem sys{v, n, 1.0, 4.0};
        const double t_end = 0.25;
        const std::vector<double> grid = uniform_times(0.0, t_end, 11);
        const RingTrajectory reduced = integrate_ring(sys, grid);
        StepControl c = tight_control(t_end);
        c.sample_interval = t_end / 10.0;
        const Trajectory full = integrate(lift_ring(sys), c);
        double worst = 0.0;
        for (size_t k = 0; k < reduced.times.size(); ++k) {
            // match full-trajectory sample times
            for (size_t q = 0; q < full.times.size(); ++q) {
                if (std::abs(full.times[q] - reduced.times[k]) > 1e-12) continue;
                const Vec2 rho = ring_radii_sq(full.states[q], v, n);
                worst = std::max({worst, std::abs(rho.x - reduced.rho1[k]),
                                  std::abs(rho.y - reduced.rho2[k])});
            }
        }
        return worst;
    });
}

PropertyResult suite_collinear_invariance(uint64_t seed, int samples, bool parallel) {
    return run_sampled("collinear-invariance", 1e-8, seed, samples, parallel, [](Rng& rng) {
        const int n = rng.uniform_int(2, 6);
        const VortexConfiguration config =
            random_collinear_config(rng, n, WindingMode::AllPlus);
        const auto line = detect_collinear(config, 1e-9);
        const Trajectory traj = integrate(config, tight_control(10.0));
        double worst = 0.0;
        for (const VortexConfiguration& state : traj.states)
            for (const Vec2& p : state.positions())
                worst = std::max(worst,
                                 std::abs(cross(line->direction, p - line->origin)));
        return worst;
    });
}

PropertyResult suite_triangle_signs(uint64_t seed, int samples, bool parallel) {
    return run_sampled("triangle-signs", 0.0, seed, samples, parallel, [](Rng& rng) {
        const VortexConfiguration config = random_mixed_triangle(rng, false);
        // windings are (+,-,+): the minority vortex carries index 1
        const TriangleState s = triangle_state(config);
        const auto rhs = triangle_rhs_mixed(s);
        const double sum = rhs[3] + rhs[4] + rhs[5];
        if (!(rhs[3] < 0.0 && rhs[4] > 0.0 && rhs[5] < 0.0)) return 1.0;
        return std::abs(sum) > 1e-12 ? 1.0 : 0.0;
    });
}

PropertyResult suite_orbital_decay(uint64_t seed, int samples, bool parallel) {
    return run_sampled("orbital-decay", 1e-3, seed, samples, parallel, [](Rng& rng) {
        const VortexConfiguration config = random_near_equilateral(rng);
        const double h3_0 = integral_set(config, 0.0).h3;
        const double psi0 = norm(phase_state(config, 0.0, h3_0).psi);
        const double s_max = 2.0;
        StepControl c = tight_control(h3_0 * (std::exp(4.0 * s_max) - 1.0) / 12.0);
        c.dt_max = 10.0;
        c.sample_interval = c.t_end / 50.0;
        const Trajectory traj = integrate(config, c);
        double worst = 0.0;
        for (const PhaseState& ps : phase_trajectory(traj, h3_0))
            worst = std::max(worst, norm(ps.psi) * std::exp(ps.s) / psi0 - 1.0);
        return std::max(worst, 0.0);
    });
}

const std::map<std::string, SuiteFn>& suite_registry() {
    static const std::map<std::string, SuiteFn> reg = {
        {"gradient-flow", suite_gradient_flow},
        {"complex-form", suite_complex_form},
        {"velocity-sum", suite_velocity_sum},
        {"m0-closed-form", suite_m0_closed_form},
        {"h-identity", suite_h_identity},
        {"scaling-covariance", suite_scaling_covariance},
        {"first-integrals", suite_first_integrals},
        {"mass-center", suite_mass_center},
        {"energy-dissipation", suite_energy_dissipation},
        {"same-sign-no-collision", suite_same_sign_no_collision},
        {"dmin-monotone-N4", suite_dmin_monotone_n4},
        {"dmin-monotone-collinear", suite_dmin_monotone_collinear},
        {"m0-negative-bound", suite_m0_negative_bound},
        {"m0-zero-bounded", suite_m0_zero_bounded},
        {"theorem-3.5", suite_theorem_35},
        {"ring-sum-rules", suite_ring_sum_rules},
        {"ring-kernel", suite_ring_kernel},
        {"lift-reduce", suite_lift_reduce},
        {"collinear-invariance", suite_collinear_invariance},
        {"triangle-signs", suite_triangle_signs},
        {"orbital-decay", suite_orbital_decay},
    };
    return reg;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suite_registry()) names.push_back(name);
    return names;
}

bool has_verify_suite(const std::string& name) {
    return suite_registry().count(name) != 0;
}

PropertyResult run_verify_suite(const std::string& name, uint64_t seed, int samples,
                                bool parallel) {
    auto it = suite_registry().find(name);
    if (it == suite_registry().end())
        throw std::invalid_argument("unknown verify suite '" + name + "'");
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    return it->second(seed, samples, parallel);
}

}  // namespace vortex
