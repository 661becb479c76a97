#include "vortex/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ClosedFormSolution ClosedFormSolution::pair(Vec2 x1, Vec2 x2) {
    if (norm(x1 - x2) < kDegenerateDistance)
        throw DegenerateConfigurationError("pair endpoints coincide");
    ClosedFormSolution s;
    s.kind_ = ClosedFormKind::Pair;
    s.x1_ = x1;
    s.x2_ = x2;
    return s;
}

ClosedFormSolution ClosedFormSolution::dipole(Vec2 x1, Vec2 x2) {
    if (norm(x1 - x2) < kDegenerateDistance)
        throw DegenerateConfigurationError("dipole endpoints coincide");
    ClosedFormSolution s;
    s.kind_ = ClosedFormKind::Dipole;
    s.x1_ = x1;
    s.x2_ = x2;
    s.horizon_ = norm_sq(x1 - x2) / 8.0;
    return s;
}

ClosedFormSolution ClosedFormSolution::polygon(int n, double r0, double theta0, Vec2 center) {
    if (n < 2) throw std::invalid_argument("polygon needs n >= 2");
    if (!(r0 > 0.0)) throw std::invalid_argument("polygon needs r0 > 0");
    ClosedFormSolution s;
    s.kind_ = ClosedFormKind::Polygon;
    s.n_ = n;
    s.r0_ = r0;
    s.theta0_ = theta0;
    s.center_ = center;
    return s;
}

ClosedFormSolution ClosedFormSolution::ring_n2(RingVariant variant, double a1, double a2) {
    if (!(0.0 < a1 && a1 < a2)) throw std::invalid_argument("need 0 < a1 < a2");
    switch (variant) {
        case RingVariant::AlignedSame:
        case RingVariant::StaggeredSame:
        case RingVariant::CenterAlignedSame:
        case RingVariant::CenterStaggeredSame:
        case RingVariant::CenterAlignedOppositeCenter:
        case RingVariant::CenterStaggeredOppositeRing: break;
        default:
            throw std::invalid_argument(std::string("no n=2 closed form for ring variant ") +
                                        ring_variant_name(variant));
    }
    ClosedFormSolution s;
    s.kind_ = ClosedFormKind::RingN2;
    s.variant_ = variant;
    s.a1_ = a1;
    s.a2_ = a2;
    s.c1_ = 0.5 * (a1 * a1 + a2 * a2);
    s.c2_ = 0.5 * (a2 * a2 - a1 * a1);
    switch (variant) {
        case RingVariant::CenterAlignedOppositeCenter:
            // rho1 = 2t + C1 - sqrt(8t^2 + 8 C1 t + C2^2) hits zero at the
            // quadratic root below.
            s.horizon_ = 0.5 * (-s.c1_ + std::sqrt(s.c1_ * s.c1_ + a1 * a1 * a2 * a2));
            break;
        case RingVariant::CenterStaggeredOppositeRing: {
            const double c3 = (3.0 * a1 * a1 + a2 * a2) / std::pow(a1 * a1 + a2 * a2, 2);
            s.horizon_ = (2.0 * s.c1_ * c3 - 1.0) / (4.0 * c3);
            break;
        }
        default: break;  // expanding families, no horizon
    }
    return s;
}

void ClosedFormSolution::check_time(double t) const {
    if (t < 0.0) throw std::invalid_argument("closed forms are defined for t >= 0");
    if (horizon_ && t >= *horizon_)
        throw std::domain_error("time beyond the solution's collision horizon");
}

double ClosedFormSolution::pair_separation(double t) const {
    if (kind_ != ClosedFormKind::Pair && kind_ != ClosedFormKind::Dipole)
        throw std::logic_error("pair_separation applies to pair/dipole solutions");
    check_time(t);
    const double d0_sq = norm_sq(x1_ - x2_);
    return std::sqrt(kind_ == ClosedFormKind::Pair ? d0_sq + 8.0 * t : d0_sq - 8.0 * t);
}

Vec2 ClosedFormSolution::pair_midpoint() const {
    if (kind_ != ClosedFormKind::Pair && kind_ != ClosedFormKind::Dipole)
        throw std::logic_error("pair_midpoint applies to pair/dipole solutions");
    return 0.5 * (x1_ + x2_);
}

double ClosedFormSolution::polygon_radius(double t) const {
    if (kind_ != ClosedFormKind::Polygon)
        throw std::logic_error("polygon_radius applies to polygon solutions");
    check_time(t);
    return std::sqrt(r0_ * r0_ + 2.0 * (n_ - 1) * t);
}

Vec2 ClosedFormSolution::ring_rho(double t) const {
    if (kind_ != ClosedFormKind::RingN2)
        throw std::logic_error("ring_rho applies to n=2 ring solutions");
    check_time(t);
    switch (variant_) {
        case RingVariant::AlignedSame: {
            const double root = std::sqrt(c2_ * c2_ + 8.0 * c1_ * t + 24.0 * t * t);
            return {c1_ + 6.0 * t - root, c1_ + 6.0 * t + root};
        }
        case RingVariant::StaggeredSame: {
            const double root = c2_ * std::pow(1.0 + 6.0 * t / c1_, 2.0 / 3.0);
            return {c1_ + 6.0 * t - root, c1_ + 6.0 * t + root};
        }
        case RingVariant::CenterAlignedSame: {
            const double root = std::sqrt(c2_ * c2_ + 8.0 * c1_ * t + 40.0 * t * t);
            return {c1_ + 10.0 * t - root, c1_ + 10.0 * t + root};
        }
        case RingVariant::CenterStaggeredSame: {
            const double root = c2_ * std::pow(1.0 + 10.0 * t / c1_, 2.0 / 5.0);
            return {c1_ + 10.0 * t - root, c1_ + 10.0 * t + root};
        }
        case RingVariant::CenterAlignedOppositeCenter: {
            const double root = std::sqrt(8.0 * t * t + 8.0 * c1_ * t + c2_ * c2_);
            return {2.0 * t + c1_ - root, 2.0 * t + c1_ + root};
        }
        case RingVariant::CenterStaggeredOppositeRing: {
            const double c3 = (3.0 * a1_ * a1_ + a2_ * a2_) /
                              std::pow(a1_ * a1_ + a2_ * a2_, 2);
            const double sigma = c1_ - 2.0 * t;
            return {sigma * (2.0 * c3 * sigma - 1.0), sigma * (3.0 - 2.0 * c3 * sigma)};
        }
        default: throw std::logic_error("unhandled ring closed form");
    }
}

RingVariant ClosedFormSolution::ring_variant() const {
    if (kind_ != ClosedFormKind::RingN2)
        throw std::logic_error("ring_variant applies to n=2 ring solutions");
    return variant_;
}

VortexConfiguration ClosedFormSolution::configuration(double t) const {
    check_time(t);
    switch (kind_) {
        case ClosedFormKind::Pair:
        case ClosedFormKind::Dipole: {
            const Vec2 mid = pair_midpoint();
            const double d0 = norm(x1_ - x2_);
            const double scale = 0.5 * pair_separation(t) / (0.5 * d0);
            const Vec2 arm1 = x1_ - mid, arm2 = x2_ - mid;
            std::vector<WindingNumber> w{WindingNumber::plus(),
                                         kind_ == ClosedFormKind::Pair ? WindingNumber::plus()
                                                                       : WindingNumber::minus()};
            return {{mid + scale * arm1, mid + scale * arm2}, std::move(w)};
        }
        case ClosedFormKind::Polygon: {
            const double r = polygon_radius(t);
            std::vector<Vec2> pts;
            pts.reserve(static_cast<size_t>(n_));
            for (int j = 0; j < n_; ++j)
                pts.push_back(center_ + r * unit_vector(2.0 * kPi * j / n_ + theta0_));
            return {std::move(pts), uniform_windings(n_)};
        }
        case ClosedFormKind::RingN2: {
            const Vec2 rho = ring_rho(t);
            RingSystem sys{variant_, 2, rho.x, rho.y};
            return lift_ring(sys);
        }
    }
    throw std::logic_error("unhandled closed-form kind");
}

ClosedFormSolution pair_dipole_solution(Vec2 x1, Vec2 x2, bool same_sign) {
    return same_sign ? ClosedFormSolution::pair(x1, x2) : ClosedFormSolution::dipole(x1, x2);
}

ClosedFormSolution polygon_solution(int n, double r0, double theta0, Vec2 center) {
    return ClosedFormSolution::polygon(n, r0, theta0, center);
}

ClosedFormSolution ring_n2_closed_form(RingVariant variant, double a1, double a2) {
    return ClosedFormSolution::ring_n2(variant, a1, a2);
}

double slope_family_sum(int family, int n) {
    switch (family) {
        case 1:
        case 2: return 8.0 * n - 4.0;
        case 3:
        case 4: return 8.0 * n + 4.0;
        case 5:
        case 6: return 8.0 * n - 12.0;
        default: throw std::invalid_argument("slope family must be 1..6");
    }
}

bool slope_family_staggered(int family) { return family % 2 == 0; }

RingVariant slope_family_variant(int family) {
    switch (family) {
        case 1: return RingVariant::AlignedSame;
        case 2: return RingVariant::StaggeredSame;
        case 3: return RingVariant::CenterAlignedSame;
        case 4: return RingVariant::CenterStaggeredSame;
        case 5: return RingVariant::CenterAlignedOppositeCenter;
        case 6: return RingVariant::CenterStaggeredOppositeCenter;
        default: throw std::invalid_argument("slope family must be 1..6");
    }
}

namespace {

double kernel_ratio(double alpha, double beta, int n, bool staggered) {
    const double ap = std::pow(alpha, 0.5 * n);
    const double bp = std::pow(beta, 0.5 * n);
    return staggered ? (bp - ap) / (bp + ap) : (bp + ap) / (bp - ap);
}

double slope_equation_residual(double alpha, int n, int family) {
    const double sum = slope_family_sum(family, n);
    const double beta = sum - alpha;
    return (beta - alpha) - 4.0 * n * kernel_ratio(alpha, beta, n, slope_family_staggered(family));
}

}  // namespace

SlopePair solve_asymptotic_slopes(int n, int family) {
    if (n < 2) throw std::invalid_argument("slope equations need n >= 2");
    const double sum = slope_family_sum(family, n);
    if (!(sum > 0.0))
        throw NoSlopeRootError("family sum constant is nonpositive; no linear growth");
    const bool staggered = slope_family_staggered(family);

    double lo = sum * 1e-9;
    double hi = sum / 2.0 * (1.0 - 1e-12);
    double g_lo = slope_equation_residual(lo, n, family);
    double g_hi = slope_equation_residual(hi, n, family);

    if (g_lo * g_hi > 0.0) {
        if (staggered && g_lo > 0.0) {
            // Residual stays positive up to alpha = beta = sum/2, which solves
            // both equations exactly: the rings share the growth rate.
            return {sum / 2.0, sum / 2.0, n, family, true};
        }
        // Residual <= 0 throughout: the only solution is alpha = 0 (rho1
        // bounded, rho2 ~ sum * t), so no positive pair exists.
        throw NoSlopeRootError("no slope pair with alpha > 0 for family " +
                               std::to_string(family) + ", n = " + std::to_string(n) +
                               ": rho1 stays bounded (rho2 ~ " + std::to_string(sum) + " t)");
    }

    // The residual is monotone on the bracket for every family solved here;
    // verify while bisecting by keeping the signs consistent.
    for (int it = 0; it < 200 && hi - lo > 1e-15 * sum; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = slope_equation_residual(mid, n, family);
        if (g_lo * g_mid <= 0.0) {
            hi = mid;
            g_hi = g_mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    const double alpha = 0.5 * (lo + hi);
    SlopePair p{alpha, sum - alpha, n, family, false};
    if (std::abs(slope_residual(p)) > 1e-10)
        throw std::runtime_error("slope bisection failed to converge to a root");
    return p;
}

double slope_residual(const SlopePair& p) {
    return slope_equation_residual(p.alpha, p.n, p.family);
}

VortexConfiguration build_equilibrium_n4() {
    std::vector<Vec2> pts;
    for (int j = 0; j < 3; ++j) pts.push_back(unit_vector(2.0 * kPi * j / 3.0));
    pts.push_back({0.0, 0.0});
    std::vector<WindingNumber> w{WindingNumber::plus(), WindingNumber::plus(),
                                 WindingNumber::plus(), WindingNumber::minus()};
    return {std::move(pts), std::move(w)};
}

std::optional<EquilibriumWindings> admissible_equilibrium_windings(int n) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (n < 4) return std::nullopt;
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (root * root != n) return std::nullopt;
    return EquilibriumWindings{(n + root) / 2, (n - root) / 2};
}

Collinear3Asymptote collinear3_asymptote(std::span<const double> offsets, bool same_sign) {
    if (offsets.size() != 3) throw std::invalid_argument("needs exactly 3 offsets");
    if (!same_sign)
        throw std::invalid_argument(
            "mixed-sign collinear triples collide in finite time; no asymptote");
    for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k)
            if (offsets[static_cast<size_t>(j)] == offsets[static_cast<size_t>(k)])
                throw std::invalid_argument("offsets must be pairwise distinct");
    // The middle vortex (by offset) converges to the mass center.
    int middle = 0;
    for (int j = 0; j < 3; ++j) {
        int below = 0;
        for (int k = 0; k < 3; ++k)
            if (k != j && offsets[static_cast<size_t>(k)] < offsets[static_cast<size_t>(j)])
                ++below;
        if (below == 1) middle = j;
    }
    const double mean = (offsets[0] + offsets[1] + offsets[2]) / 3.0;
    return {middle, mean};
}

Ring3CenterLimits ring3_center_limits(double a1, double a2, RingVariant variant) {
    if (!(0.0 < a1 && a1 < a2)) throw std::invalid_argument("need 0 < a1 < a2");
    switch (variant) {
        case RingVariant::CenterAlignedOppositeCenter: {
            const double r = a1 * a2 / (a1 + a2);
            return {r * r, 12.0};
        }
        case RingVariant::CenterStaggeredOppositeCenter: {
            const double r = a1 * a2 / (a2 - a1);
            return {r * r, 12.0};
        }
        default:
            throw std::invalid_argument("n=3 center limits exist for the two "
                                        "center-opposite ring variants only");
    }
}

}  // namespace vortex
