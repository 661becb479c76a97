#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vortex/core.hpp"

namespace vortex {

/// SplitMix64: tiny, deterministic across platforms, one stream per sample.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    bool coin() { return (next() & 1) != 0; }

    /// Independent stream for sample k of a seeded batch.
    static Rng for_sample(uint64_t seed, uint64_t k) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
        mix.next();
        return mix;
    }
};

enum class WindingMode {
    AllPlus,
    AllMinus,
    Mixed,        // at least one of each sign
    M0Negative,   // resampled until M0 < 0
    M0ZeroQuad,   // N = 4 with three +1 and one -1
};

std::vector<Vec2> random_positions(Rng& rng, int n, double box = 1.5, double min_sep = 0.25);
std::vector<WindingNumber> random_windings(Rng& rng, int n, WindingMode mode);
VortexConfiguration random_config(Rng& rng, int n, WindingMode mode, double box = 1.5,
                                  double min_sep = 0.25);
VortexConfiguration random_collinear_config(Rng& rng, int n, WindingMode mode);

/// Mixed (+1,-1,+1) triangle with the lone-sign vortex at the apex; isoceles
/// makes the two arms equal, otherwise their ratio stays >= 1.05. Random
/// rotation and offset.
VortexConfiguration random_mixed_triangle(Rng& rng, bool isoceles);

/// Same-sign near-equilateral triangle, mass center at the origin, with the
/// phase deviation ||psi(0)|| <= psi_cap.
VortexConfiguration random_near_equilateral(Rng& rng, double psi_cap = 0.05);

/// Run body(0..count-1), OpenMP-parallel when parallel is set. Bodies must only
/// write to their own index's slots.
void parallel_for_index(int count, bool parallel, const std::function<void(int)>& body);

/// One verify-suite outcome: worst observed margin vs the gate.
struct PropertyResult {
    std::string name;
    bool pass = false;
    int samples = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string note;
};

/// Registered property suites (spec invariants run over seeded random data).
std::vector<std::string> verify_suite_names();
bool has_verify_suite(const std::string& name);
PropertyResult run_verify_suite(const std::string& name, uint64_t seed, int samples,
                                bool parallel = true);

}  // namespace vortex
