#include "vortex/core.hpp"

#include <algorithm>
#include <complex>
#include <limits>

namespace vortex {

std::vector<WindingNumber> make_windings(std::span<const int> values) {
    std::vector<WindingNumber> out;
    out.reserve(values.size());
    for (int v : values) out.push_back(WindingNumber(v));
    return out;
}

std::vector<WindingNumber> make_windings(std::initializer_list<int> values) {
    return make_windings(std::span<const int>(values.begin(), values.size()));
}

std::vector<WindingNumber> uniform_windings(int n, int sign) {
    return std::vector<WindingNumber>(static_cast<size_t>(n), WindingNumber(sign));
}

std::vector<int> winding_values(std::span<const WindingNumber> windings) {
    std::vector<int> out;
    out.reserve(windings.size());
    for (const auto& w : windings) out.push_back(w.value());
    return out;
}

VortexConfiguration::VortexConfiguration(std::vector<Vec2> positions,
                                         std::vector<WindingNumber> windings)
    : positions_(std::move(positions)), windings_(std::move(windings)) {
    if (positions_.size() < 2)
        throw std::invalid_argument("configuration needs at least 2 vortices");
    if (positions_.size() != windings_.size())
        throw std::invalid_argument("positions and windings must have equal length");
    const int n = size();
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
            const double d = norm(positions_[j] - positions_[l]);
            if (d < kDegenerateDistance)
                throw DegenerateConfigurationError(
                    "vortices " + std::to_string(j) + " and " + std::to_string(l) +
                    " coincide (distance " + std::to_string(d) + ")");
        }
}

bool VortexConfiguration::same_winding() const {
    for (const auto& w : windings_)
        if (!(w == windings_.front())) return false;
    return true;
}

Vec2 VortexConfiguration::mass_center() const {
    Vec2 sum;
    for (const auto& p : positions_) sum += p;
    return (1.0 / size()) * sum;
}

double VortexConfiguration::diameter() const {
    double d2 = 0.0;
    const int n = size();
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
            d2 = std::max(d2, norm_sq(positions_[j] - positions_[l]));
    return std::sqrt(d2);
}

VortexConfiguration translated(const VortexConfiguration& c, Vec2 shift) {
    std::vector<Vec2> pts = c.positions();
    for (auto& p : pts) p += shift;
    return {std::move(pts), c.windings()};
}

VortexConfiguration scaled(const VortexConfiguration& c, double factor) {
    if (factor <= 0.0) throw std::invalid_argument("scale factor must be positive");
    std::vector<Vec2> pts = c.positions();
    for (auto& p : pts) p *= factor;
    return {std::move(pts), c.windings()};
}

VortexConfiguration rotated(const VortexConfiguration& c, double theta) {
    std::vector<Vec2> pts = c.positions();
    for (auto& p : pts) p = rotated(p, theta);
    return {std::move(pts), c.windings()};
}

namespace detail {

void velocity_raw(std::span<const double> xy, std::span<const int> m, std::span<double> out) {
    const int n = static_cast<int>(m.size());
    for (int j = 0; j < n; ++j) {
        const double xj = xy[2 * j], yj = xy[2 * j + 1];
        double vx = 0.0, vy = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const double dx = xj - xy[2 * k];
            const double dy = yj - xy[2 * k + 1];
            const double w = 2.0 * m[j] * m[k] / (dx * dx + dy * dy);
            vx += w * dx;
            vy += w * dy;
        }
        out[2 * j] = vx;
        out[2 * j + 1] = vy;
    }
}

double min_pair_distance_raw(std::span<const double> xy) {
    const int n = static_cast<int>(xy.size() / 2);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
            const double dx = xy[2 * j] - xy[2 * l];
            const double dy = xy[2 * j + 1] - xy[2 * l + 1];
            best = std::min(best, dx * dx + dy * dy);
        }
    return std::sqrt(best);
}

std::vector<Vec2> to_vec2(std::span<const double> xy) {
    std::vector<Vec2> out(xy.size() / 2);
    for (size_t j = 0; j < out.size(); ++j) out[j] = {xy[2 * j], xy[2 * j + 1]};
    return out;
}

std::vector<double> to_flat(std::span<const Vec2> pts) {
    std::vector<double> out(2 * pts.size());
    for (size_t j = 0; j < pts.size(); ++j) {
        out[2 * j] = pts[j].x;
        out[2 * j + 1] = pts[j].y;
    }
    return out;
}

}  // namespace detail

std::vector<Vec2> velocity_field(const VortexConfiguration& config) {
    const int n = config.size();
    std::vector<Vec2> out(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Vec2 xj = config.position(j);
        const int mj = config.winding(j);
        Vec2 v;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const Vec2 d = xj - config.position(k);
            v += (2.0 * mj * config.winding(k) / norm_sq(d)) * d;
        }
        out[static_cast<size_t>(j)] = v;
    }
    return out;
}

std::vector<Vec2> velocity_field_parallel(const VortexConfiguration& config) {
    const int n = config.size();
    std::vector<Vec2> out(static_cast<size_t>(n));
#ifdef VORTEX_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < n; ++j) {
        const Vec2 xj = config.position(j);
        const int mj = config.winding(j);
        Vec2 v;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const Vec2 d = xj - config.position(k);
            v += (2.0 * mj * config.winding(k) / norm_sq(d)) * d;
        }
        out[static_cast<size_t>(j)] = v;
    }
    return out;
}

std::vector<Vec2> velocity_field_complex(const VortexConfiguration& config) {
    const int n = config.size();
    std::vector<Vec2> out(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const std::complex<double> zj(config.position(j).x, config.position(j).y);
        std::complex<double> v = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const std::complex<double> zk(config.position(k).x, config.position(k).y);
            v += static_cast<double>(config.winding(k)) / (std::conj(zj) - std::conj(zk));
        }
        v *= 2.0 * config.winding(j);
        out[static_cast<size_t>(j)] = {v.real(), v.imag()};
    }
    return out;
}

double interaction_energy(const VortexConfiguration& config) {
    const int n = config.size();
    double w = 0.0;
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
            w += config.winding(j) * config.winding(l) *
                 std::log(norm(config.position(j) - config.position(l)));
    return -2.0 * w;
}

double pair_sum_m0(std::span<const WindingNumber> windings) {
    const int n = static_cast<int>(windings.size());
    int n_plus = 0;
    for (const auto& w : windings)
        if (w.value() > 0) ++n_plus;
    const int n_minus = n - n_plus;
    const double diff = n_plus - n_minus;
    return 0.5 * (diff * diff - n);
}

SubsetWinding collective_winding(std::span<const WindingNumber> windings,
                                 std::span<const int> indices) {
    if (indices.size() < 2)
        throw std::invalid_argument("collision-cluster subsets need at least 2 vortices");
    SubsetWinding out;
    out.indices.assign(indices.begin(), indices.end());
    std::sort(out.indices.begin(), out.indices.end());
    const int k = static_cast<int>(out.indices.size());
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            out.m1 += windings[static_cast<size_t>(out.indices[a])].value() *
                      windings[static_cast<size_t>(out.indices[b])].value();
    return out;
}

IntegralSet integral_set(const VortexConfiguration& config, double t) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    const int n = config.size();
    IntegralSet s;
    s.time = t;
    s.m0 = pair_sum_m0(config.windings());
    double sum_diff = 0.0, sum_plus = 0.0, sum_abs = 0.0;
    for (int j = 0; j < n; ++j) {
        sum_abs += norm_sq(config.position(j));
        for (int l = j + 1; l < n; ++l) {
            sum_diff += norm_sq(config.position(j) - config.position(l));
            sum_plus += norm_sq(config.position(j) + config.position(l));
        }
    }
    s.h1 = -4.0 * n * s.m0 * t + sum_diff;
    s.h2 = -4.0 * s.m0 * t + sum_abs;
    s.h3 = -4.0 * (n - 2) * s.m0 * t + sum_plus;
    s.mass_center = config.mass_center();
    s.energy = interaction_energy(config);
    return s;
}

std::optional<double> collision_upper_bound(double h1_0, int n, double m0) {
    if (h1_0 <= 0.0) throw std::invalid_argument("h1_0 must be positive");
    if (m0 >= 0.0) return std::nullopt;
    return -h1_0 / (4.0 * n * m0);
}

MinPairDistance min_pairwise_distance(const VortexConfiguration& config) {
    const int n = config.size();
    MinPairDistance best{std::numeric_limits<double>::infinity(), 0, 1};
    for (int j = 0; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
            const double d = norm(config.position(j) - config.position(l));
            if (d < best.value) best = {d, j, l};
        }
    return best;
}

}  // namespace vortex
