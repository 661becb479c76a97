#include "vortex/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;

struct Moments {
    Vec2 centroid;
    double a, b, c;  // centered second-moment matrix [[a,b],[b,c]]
};

Moments second_moments(const VortexConfiguration& config) {
    Moments m{config.mass_center(), 0.0, 0.0, 0.0};
    for (const Vec2& p : config.positions()) {
        const Vec2 q = p - m.centroid;
        m.a += q.x * q.x;
        m.b += q.x * q.y;
        m.c += q.y * q.y;
    }
    return m;
}

Vec2 principal_axis(const Moments& m) {
    const double half_trace = 0.5 * (m.a + m.c);
    const double half_gap = 0.5 * (m.a - m.c);
    const double lambda = half_trace + std::sqrt(half_gap * half_gap + m.b * m.b);
    // Eigenvector from the numerically better of the two rows.
    Vec2 v1{m.b, lambda - m.a};
    Vec2 v2{lambda - m.c, m.b};
    Vec2 v = norm_sq(v1) >= norm_sq(v2) ? v1 : v2;
    const double len = norm(v);
    if (len == 0.0) return {1.0, 0.0};  // isotropic point cloud; any axis fits
    v = (1.0 / len) * v;
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = -v;
    return v;
}

}  // namespace

std::optional<CollinearReduction> detect_collinear(const VortexConfiguration& config,
                                                   std::optional<double> tol) {
    const Moments m = second_moments(config);
    const Vec2 e = principal_axis(m);
    const double threshold = tol.value_or(1e-9 * config.diameter());
    CollinearReduction red;
    red.origin = m.centroid;
    red.direction = e;
    red.offsets.reserve(static_cast<size_t>(config.size()));
    for (const Vec2& p : config.positions()) {
        const Vec2 q = p - m.centroid;
        if (std::abs(cross(e, q)) > threshold) return std::nullopt;
        red.offsets.push_back(dot(q, e));
    }
    return red;
}

std::vector<double> collinear_rhs(std::span<const double> offsets,
                                  std::span<const WindingNumber> windings) {
    const int n = static_cast<int>(offsets.size());
    if (offsets.size() != windings.size())
        throw std::invalid_argument("offsets and windings must have equal length");
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const double gap = offsets[static_cast<size_t>(j)] - offsets[static_cast<size_t>(k)];
            if (std::abs(gap) < kDegenerateDistance)
                throw DegenerateConfigurationError("coincident collinear offsets");
            v += windings[static_cast<size_t>(k)].value() / gap;
        }
        out[static_cast<size_t>(j)] = 2.0 * windings[static_cast<size_t>(j)].value() * v;
    }
    return out;
}

VortexConfiguration lift_collinear(const CollinearReduction& reduction,
                                   std::span<const WindingNumber> windings) {
    std::vector<Vec2> pts;
    pts.reserve(reduction.offsets.size());
    for (double a : reduction.offsets) pts.push_back(reduction.origin + a * reduction.direction);
    return {std::move(pts), {windings.begin(), windings.end()}};
}

// ---------------------------------------------------------------------------

const char* ring_variant_name(RingVariant v) {
    switch (v) {
        case RingVariant::AlignedSame: return "aligned_same";
        case RingVariant::StaggeredSame: return "staggered_same";
        case RingVariant::StaggeredOpposite: return "staggered_opposite";
        case RingVariant::CenterAlignedSame: return "center_aligned_same";
        case RingVariant::CenterStaggeredSame: return "center_staggered_same";
        case RingVariant::CenterAlignedOppositeCenter: return "center_aligned_opposite_center";
        case RingVariant::CenterStaggeredOppositeCenter:
            return "center_staggered_opposite_center";
        case RingVariant::CenterStaggeredOppositeRing: return "center_staggered_opposite_ring";
    }
    return "unknown";
}

std::optional<RingVariant> ring_variant_from_name(std::string_view name) {
    for (RingVariant v : kAllRingVariants)
        if (name == ring_variant_name(v)) return v;
    return std::nullopt;
}

bool ring_variant_has_center(RingVariant v) {
    switch (v) {
        case RingVariant::AlignedSame:
        case RingVariant::StaggeredSame:
        case RingVariant::StaggeredOpposite: return false;
        default: return true;
    }
}

bool ring_variant_staggered(RingVariant v) {
    switch (v) {
        case RingVariant::StaggeredSame:
        case RingVariant::StaggeredOpposite:
        case RingVariant::CenterStaggeredSame:
        case RingVariant::CenterStaggeredOppositeCenter:
        case RingVariant::CenterStaggeredOppositeRing: return true;
        default: return false;
    }
}

bool ring_variant_difference_kernel(RingVariant v) {
    switch (v) {
        case RingVariant::AlignedSame:
        case RingVariant::CenterAlignedSame:
        case RingVariant::CenterAlignedOppositeCenter: return true;
        default: return false;
    }
}

double ring_sum_constant(RingVariant v, int n) {
    switch (v) {
        case RingVariant::AlignedSame:
        case RingVariant::StaggeredSame: return 8.0 * n - 4.0;
        case RingVariant::StaggeredOpposite: return -4.0;
        case RingVariant::CenterAlignedSame:
        case RingVariant::CenterStaggeredSame: return 8.0 * n + 4.0;
        case RingVariant::CenterAlignedOppositeCenter:
        case RingVariant::CenterStaggeredOppositeCenter: return 8.0 * n - 12.0;
        case RingVariant::CenterStaggeredOppositeRing: return -4.0;
    }
    return 0.0;
}

void RingSystem::validate() const {
    if (n < 2) throw std::invalid_argument("ring systems need n >= 2 per ring");
    if (!(rho1 > 0.0) || !(rho2 > rho1))
        throw std::invalid_argument("ring radii must satisfy 0 < rho1 < rho2");
}

Vec2 ring_rhs(const RingSystem& sys) {
    const double n = sys.n;
    const double p1 = std::pow(sys.rho1, 0.5 * n);
    const double p2 = std::pow(sys.rho2, 0.5 * n);
    double q;  // ring-ring exchange term 4n rho1^{n/2} / (rho2^{n/2} -+ rho1^{n/2})
    if (ring_variant_difference_kernel(sys.variant)) {
        const double den = p2 - p1;
        if (!(den > 0.0))
            throw std::domain_error("equal ring radii: aligned-ring kernel denominator vanishes");
        q = 4.0 * n * p1 / den;
    } else {
        q = 4.0 * n * p1 / (p1 + p2);
    }
    switch (sys.variant) {
        case RingVariant::AlignedSame: return {2 * n - 2 - q, 6 * n - 2 + q};
        case RingVariant::StaggeredSame: return {2 * n - 2 + q, 6 * n - 2 - q};
        case RingVariant::StaggeredOpposite: return {2 * n - 2 - q, -2 * n - 2 + q};
        case RingVariant::CenterAlignedSame: return {2 * n + 2 - q, 6 * n + 2 + q};
        case RingVariant::CenterStaggeredSame: return {2 * n + 2 + q, 6 * n + 2 - q};
        case RingVariant::CenterAlignedOppositeCenter: return {2 * n - 6 - q, 6 * n - 6 + q};
        case RingVariant::CenterStaggeredOppositeCenter: return {2 * n - 6 + q, 6 * n - 6 - q};
        case RingVariant::CenterStaggeredOppositeRing: return {2 * n - 6 - q, 2 - 2 * n + q};
    }
    throw std::logic_error("unhandled ring variant");
}

double ring_kernel_sum(double x, int n, bool staggered) {
    if (!(x > 1.0)) throw std::domain_error("ring kernel sum requires x > 1");
    const double xn = std::pow(x, n);
    return staggered ? n * (xn - 1.0) / (xn + 1.0) : n * (xn + 1.0) / (xn - 1.0);
}

std::vector<WindingNumber> ring_windings(RingVariant v, int n) {
    std::vector<WindingNumber> w(static_cast<size_t>(2 * n), WindingNumber::plus());
    if (v == RingVariant::StaggeredOpposite || v == RingVariant::CenterStaggeredOppositeRing)
        for (int j = 0; j < n; ++j) w[static_cast<size_t>(n + j)] = WindingNumber::minus();
    if (ring_variant_has_center(v)) {
        const bool center_opposite = v == RingVariant::CenterAlignedOppositeCenter ||
                                     v == RingVariant::CenterStaggeredOppositeCenter ||
                                     v == RingVariant::CenterStaggeredOppositeRing;
        w.push_back(center_opposite ? WindingNumber::minus() : WindingNumber::plus());
    }
    return w;
}

VortexConfiguration lift_ring(const RingSystem& sys, double theta0, Vec2 center) {
    sys.validate();
    const double r1 = std::sqrt(sys.rho1);
    const double r2 = std::sqrt(sys.rho2);
    const double offset = ring_variant_staggered(sys.variant) ? kPi / sys.n : 0.0;
    std::vector<Vec2> pts;
    pts.reserve(static_cast<size_t>(2 * sys.n + 1));
    for (int j = 0; j < sys.n; ++j)
        pts.push_back(center + r1 * unit_vector(2.0 * kPi * j / sys.n + theta0));
    for (int j = 0; j < sys.n; ++j)
        pts.push_back(center + r2 * unit_vector(2.0 * kPi * j / sys.n + offset + theta0));
    if (ring_variant_has_center(sys.variant)) pts.push_back(center);
    return {std::move(pts), ring_windings(sys.variant, sys.n)};
}

Vec2 ring_radii_sq(const VortexConfiguration& config, RingVariant v, int n, Vec2 center) {
    const int expected = 2 * n + (ring_variant_has_center(v) ? 1 : 0);
    if (config.size() != expected)
        throw std::invalid_argument("configuration size does not match the ring variant");
    return {norm_sq(config.position(0) - center), norm_sq(config.position(n) - center)};
}

// ---------------------------------------------------------------------------

namespace {

// Dormand-Prince pair on the 2-dimensional radial system.
struct RingStepper {
    const RingSystem* proto;

    Vec2 rhs(Vec2 y) const {
        RingSystem s = *proto;
        s.rho1 = y.x;
        s.rho2 = y.y;
        return ring_rhs(s);
    }

    // Returns (y5, err); coefficients shared with the full integrator.
    std::pair<Vec2, double> attempt(Vec2 y, double dt, double rel_tol, double abs_tol) const {
        static constexpr double a[7][6] = {
            {},
            {1.0 / 5},
            {3.0 / 40, 9.0 / 40},
            {44.0 / 45, -56.0 / 15, 32.0 / 9},
            {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
            {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
            {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
        };
        static constexpr double e[7] = {71.0 / 57600,      0.0,        -71.0 / 16695,
                                        71.0 / 1920,       -17253.0 / 339200,
                                        22.0 / 525,        -1.0 / 40};
        Vec2 k[7];
        k[0] = rhs(y);
        Vec2 y5;
        for (int stage = 1; stage < 7; ++stage) {
            Vec2 acc;
            for (int j = 0; j < stage; ++j) acc += a[stage][j] * k[j];
            const Vec2 ytmp = y + dt * acc;
            if (stage == 6) y5 = ytmp;
            k[stage] = rhs(ytmp);
        }
        Vec2 ev;
        for (int j = 0; j < 7; ++j) ev += e[j] * k[j];
        ev *= dt;
        const double scx = abs_tol + rel_tol * std::max(std::abs(y.x), std::abs(y5.x));
        const double scy = abs_tol + rel_tol * std::max(std::abs(y.y), std::abs(y5.y));
        const double err =
            std::sqrt(0.5 * ((ev.x / scx) * (ev.x / scx) + (ev.y / scy) * (ev.y / scy)));
        return {y5, err};
    }
};

}  // namespace

RingTrajectory integrate_ring(const RingSystem& initial, std::span<const double> sample_times,
                              const RingIntegrateOptions& options) {
    initial.validate();
    RingStepper stepper{&initial};
    RingTrajectory traj;
    Vec2 y{initial.rho1, initial.rho2};
    double t = 0.0;
    const bool diff_kernel = ring_variant_difference_kernel(initial.variant);

    auto record = [&](double time, Vec2 state) {
        traj.times.push_back(time);
        traj.rho1.push_back(state.x);
        traj.rho2.push_back(state.y);
    };

    size_t next = 0;
    while (next < sample_times.size() && sample_times[next] <= 0.0) {
        record(0.0, y);
        ++next;
    }

    double dt = 1e-6;
    double err_prev = 1e-4;
    bool after_reject = false;
    while (next < sample_times.size()) {
        const double target = sample_times[next];
        const double cap = diff_kernel ? 0.05 * std::min(y.x, std::abs(y.y - y.x))
                                       : 0.05 * y.x;
        double h = std::min({dt, options.dt_max, cap, target - t});
        const bool lands = h == target - t;
        if (!(t + h > t)) throw std::runtime_error("ring integration step underflow");
        auto [y5, err] = stepper.attempt(y, h, options.rel_tol, options.abs_tol);
        if (!(err <= 1.0)) {
            dt = h * (std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1);
            after_reject = true;
            continue;
        }
        const Vec2 y_prev = y;
        const double t_prev = t;
        y = y5;
        t = lands ? target : t + h;
        dt = h * (err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.14) * std::pow(err_prev, 0.08),
                                         0.2, after_reject ? 1.0 : 5.0)
                            : 5.0);
        err_prev = std::max(err, 1e-4);
        after_reject = false;

        if (y.x < options.rho_floor) {
            // Bisect the rho1 floor crossing inside (t_prev, t].
            auto advance = [&](Vec2 state, double from, double to) {
                double tt = from;
                double hdt = to - from;
                while (tt < to) {
                    const double cc = diff_kernel
                                          ? 0.05 * std::min(state.x, std::abs(state.y - state.x))
                                          : 0.05 * state.x;
                    const double hh = std::min({hdt, cc, to - tt});
                    if (!(tt + hh > tt)) break;
                    auto [ym, em] = stepper.attempt(state, hh, options.rel_tol, options.abs_tol);
                    if (em <= 1.0) {
                        state = ym;
                        tt = hh == to - tt ? to : tt + hh;
                        hdt = hh * (em > 0.0 ? std::clamp(0.9 * std::pow(em, -0.2), 0.2, 5.0)
                                             : 5.0);
                    } else {
                        hdt = hh * std::max(0.1, 0.9 * std::pow(em, -0.2));
                    }
                }
                return state;
            };
            double lo = t_prev, hi = t;
            Vec2 y_lo = y_prev;
            while (hi - lo > 1e-12 * std::max(1.0, hi)) {
                const double mid = 0.5 * (lo + hi);
                const Vec2 y_mid = advance(y_lo, lo, mid);
                if (y_mid.x < options.rho_floor) {
                    hi = mid;
                } else {
                    lo = mid;
                    y_lo = y_mid;
                }
            }
            record(hi, {options.rho_floor, y_lo.y});
            traj.reached_floor = true;
            traj.t_final = hi;
            return traj;
        }

        if (lands) {
            record(t, y);
            ++next;
        }
    }
    traj.t_final = t;
    return traj;
}

std::vector<double> uniform_times(double t0, double t1, int count) {
    if (count < 2 || !(t1 > t0)) throw std::invalid_argument("bad time grid request");
    std::vector<double> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<size_t>(i)] = t0 + (t1 - t0) * i / (count - 1);
    out.back() = t1;
    return out;
}

std::vector<double> log_spaced_times(double t0, double t1, int count) {
    if (count < 2 || !(t0 > 0.0) || !(t1 > t0))
        throw std::invalid_argument("log grid needs 0 < t0 < t1 and count >= 2");
    std::vector<double> out(static_cast<size_t>(count));
    const double ratio = std::log(t1 / t0);
    for (int i = 0; i < count; ++i)
        out[static_cast<size_t>(i)] = t0 * std::exp(ratio * i / (count - 1));
    out.back() = t1;
    return out;
}

// ---------------------------------------------------------------------------

TriangleState triangle_state(const VortexConfiguration& config) {
    if (config.size() != 3) throw std::invalid_argument("triangle state needs exactly 3 vortices");
    TriangleState s;
    s.d12 = norm(config.position(0) - config.position(1));
    s.d13 = norm(config.position(0) - config.position(2));
    s.d23 = norm(config.position(1) - config.position(2));
    const double dmax = std::max({s.d12, s.d13, s.d23});
    // Heron with the stable ordering-free form.
    const double sp = 0.5 * (s.d12 + s.d13 + s.d23);
    const double rad = sp * (sp - s.d12) * (sp - s.d13) * (sp - s.d23);
    if (!(rad > 0.0) || std::sqrt(rad) < 1e-12 * dmax * dmax)
        throw std::domain_error("collinear 3-vortex configuration has no triangle state");
    s.area = std::sqrt(rad);
    auto angle = [](double adj1, double adj2, double opp) {
        return std::acos(
            std::clamp((adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2), -1.0, 1.0));
    };
    s.theta1 = angle(s.d12, s.d13, s.d23);
    s.theta2 = angle(s.d12, s.d23, s.d13);
    s.theta3 = angle(s.d13, s.d23, s.d12);
    return s;
}

std::array<double, 6> triangle_rhs_same_sign(const TriangleState& s) {
    const double b = 4.0 * s.area / std::pow(s.d12 * s.d13 * s.d23, 2);
    const double c1 = std::cos(s.theta1), c2 = std::cos(s.theta2), c3 = std::cos(s.theta3);
    return {
        4.0 / s.d12 + 2.0 * c1 / s.d13 + 2.0 * c2 / s.d23,
        4.0 / s.d13 + 2.0 * c1 / s.d12 + 2.0 * c3 / s.d23,
        4.0 / s.d23 + 2.0 * c2 / s.d12 + 2.0 * c3 / s.d13,
        b * (s.d12 * s.d12 + s.d13 * s.d13 - 2.0 * s.d23 * s.d23),
        b * (s.d12 * s.d12 + s.d23 * s.d23 - 2.0 * s.d13 * s.d13),
        b * (s.d13 * s.d13 + s.d23 * s.d23 - 2.0 * s.d12 * s.d12),
    };
}

std::array<double, 6> triangle_rhs_mixed(const TriangleState& s) {
    const double b = 4.0 * s.area / std::pow(s.d12 * s.d13 * s.d23, 2);
    const double c1 = std::cos(s.theta1), c2 = std::cos(s.theta2), c3 = std::cos(s.theta3);
    return {
        -4.0 / s.d12 + 2.0 * c1 / s.d13 - 2.0 * c2 / s.d23,
        4.0 / s.d13 - 2.0 * c1 / s.d12 - 2.0 * c3 / s.d23,
        -4.0 / s.d23 - 2.0 * c2 / s.d12 + 2.0 * c3 / s.d13,
        -b * (s.d12 * s.d12 + s.d13 * s.d13),
        b * (s.d12 * s.d12 + s.d23 * s.d23 + 2.0 * s.d13 * s.d13),
        -b * (s.d13 * s.d13 + s.d23 * s.d23),
    };
}

PhaseState phase_state(const VortexConfiguration& config, double t, double h3_0) {
    if (config.size() != 3 || !config.same_winding())
        throw std::invalid_argument("phase state needs 3 same-sign vortices");
    if (norm(config.mass_center()) > 1e-8)
        throw std::invalid_argument("phase state needs the mass center at the origin");
    if (!(h3_0 > 0.0) || t < 0.0) throw std::invalid_argument("need h3_0 > 0 and t >= 0");
    std::array<double, 3> ang{};
    for (int j = 0; j < 3; ++j) {
        const Vec2 p = config.position(j);
        double a = std::atan2(p.y, p.x);
        if (a < 0.0) a += 2.0 * kPi;
        ang[static_cast<size_t>(j)] = a;
    }
    std::sort(ang.begin(), ang.end());
    PhaseState ps;
    ps.phi1 = ang[1] - ang[0];
    ps.phi2 = ang[2] - ang[1];
    ps.psi = {ps.phi1 - 2.0 * kPi / 3.0, ps.phi2 - 2.0 * kPi / 3.0};
    ps.s = 0.25 * std::log((12.0 * t + h3_0) / h3_0);
    return ps;
}

}  // namespace vortex
