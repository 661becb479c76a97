#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortex {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
constexpr Vec2 operator*(Vec2 v, double s) { return s * v; }
constexpr Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm_sq(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::sqrt(norm_sq(v)); }
inline Vec2 rotated(Vec2 v, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}
inline Vec2 unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Pairwise distances below this are treated as a coincidence: 1/d^2 is
/// numerically meaningless there.
inline constexpr double kDegenerateDistance = 1e-12;

class DegenerateConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Topological charge of a vortex. The model only admits +1 and -1;
/// anything else is rejected at construction.
class WindingNumber {
public:
    explicit WindingNumber(int value) : value_(value) {
        if (value != 1 && value != -1)
            throw std::invalid_argument("winding number must be +1 or -1, got " +
                                        std::to_string(value));
    }
    static WindingNumber plus() { return WindingNumber(1); }
    static WindingNumber minus() { return WindingNumber(-1); }
    int value() const { return value_; }
    friend bool operator==(WindingNumber a, WindingNumber b) { return a.value_ == b.value_; }

private:
    int value_;
};

std::vector<WindingNumber> make_windings(std::span<const int> values);
std::vector<WindingNumber> make_windings(std::initializer_list<int> values);
std::vector<WindingNumber> uniform_windings(int n, int sign = 1);
std::vector<int> winding_values(std::span<const WindingNumber> windings);

/// Positions and winding numbers of N >= 2 vortices with pairwise distinct
/// positions. Immutable after construction; construction validates.
class VortexConfiguration {
public:
    VortexConfiguration(std::vector<Vec2> positions, std::vector<WindingNumber> windings);

    int size() const { return static_cast<int>(positions_.size()); }
    const std::vector<Vec2>& positions() const { return positions_; }
    const std::vector<WindingNumber>& windings() const { return windings_; }
    Vec2 position(int j) const { return positions_[static_cast<size_t>(j)]; }
    int winding(int j) const { return windings_[static_cast<size_t>(j)].value(); }

    bool same_winding() const;
    Vec2 mass_center() const;
    double diameter() const;

private:
    std::vector<Vec2> positions_;
    std::vector<WindingNumber> windings_;
};

VortexConfiguration translated(const VortexConfiguration& c, Vec2 shift);
VortexConfiguration scaled(const VortexConfiguration& c, double factor);
VortexConfiguration rotated(const VortexConfiguration& c, double theta);

/// Velocity of each vortex: v_j = 2 m_j sum_{k != j} m_k (x_j - x_k) / |x_j - x_k|^2.
/// The returned velocities sum to zero (mass-center conservation).
std::vector<Vec2> velocity_field(const VortexConfiguration& config);

/// Same result, computed row-parallel with OpenMP. Each row is an independent
/// fixed-order sum, so the output is bit-identical to velocity_field.
std::vector<Vec2> velocity_field_parallel(const VortexConfiguration& config);

/// Same velocity evaluated through the complex form 2 m_j sum m_k / (conj z_j - conj z_k).
std::vector<Vec2> velocity_field_complex(const VortexConfiguration& config);

/// Interaction energy W(X) = -sum_{j != k} m_j m_k ln |x_j - x_k| (ordered pairs,
/// so each pair counts twice). The velocity field is -grad W.
double interaction_energy(const VortexConfiguration& config);

/// M0 = sum_{j<l} m_j m_l = ((N+ - N-)^2 - N) / 2.
double pair_sum_m0(std::span<const WindingNumber> windings);

struct SubsetWinding {
    std::vector<int> indices;
    double m1 = 0.0;  // collective winding number of the subset
};

/// m1 = sum_{j<l in I} m_j m_l; a subset with m1 >= 0 cannot be a collision cluster.
SubsetWinding collective_winding(std::span<const WindingNumber> windings,
                                 std::span<const int> indices);

struct IntegralSet {
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
    double m0 = 0.0;
    Vec2 mass_center;
    double energy = 0.0;
    double time = 0.0;
};

/// The three non-autonomous first integrals evaluated at (X, t):
///   H1 = -4 N M0 t + sum_{j<l} |x_j - x_l|^2
///   H2 = -4 M0 t   + sum_j |x_j|^2
///   H3 = -4 (N-2) M0 t + sum_{j<l} |x_j + x_l|^2
/// Identically H2 = (H1 + H3) / (2(N-1)).
IntegralSet integral_set(const VortexConfiguration& config, double t);

/// T_a = -h1_0 / (4 n m0) when m0 < 0 (a collision happens by then); absent otherwise.
std::optional<double> collision_upper_bound(double h1_0, int n, double m0);

struct MinPairDistance {
    double value = 0.0;
    int j = 0;  // lexicographically smallest pair attaining the minimum
    int l = 1;
};

MinPairDistance min_pairwise_distance(const VortexConfiguration& config);

namespace detail {

// Flat-layout kernels used by the integrator: xy = [x0,y0,x1,y1,...].
void velocity_raw(std::span<const double> xy, std::span<const int> m, std::span<double> out);
double min_pair_distance_raw(std::span<const double> xy);
std::vector<Vec2> to_vec2(std::span<const double> xy);
std::vector<double> to_flat(std::span<const Vec2> pts);

}  // namespace detail

}  // namespace vortex
