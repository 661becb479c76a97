// Compares the serial reference kernels against the OpenMP-parallel paths:
// the row-parallel velocity field at large N (bit-identical by construction)
// and a sweep of independent integration runs.

#include <chrono>
#include <cstdio>
#include <vector>

#include "vortex/analysis.hpp"
#include "vortex/batch.hpp"
#include "vortex/integrator.hpp"

#ifdef VORTEX_HAVE_OPENMP
#include <omp.h>
#endif

using namespace vortex;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_velocity(int n, int reps) {
    Rng rng(42);
    const VortexConfiguration config = random_config(rng, n, WindingMode::Mixed, 10.0, 1e-3);

    auto t0 = Clock::now();
    std::vector<Vec2> serial;
    for (int r = 0; r < reps; ++r) serial = velocity_field(config);
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    std::vector<Vec2> parallel;
    for (int r = 0; r < reps; ++r) parallel = velocity_field_parallel(config);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (size_t j = 0; identical && j < serial.size(); ++j)
        identical = serial[j].x == parallel[j].x && serial[j].y == parallel[j].y;

    std::printf("velocity N=%-6d reps=%-4d serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n",
                n, reps, t_serial, t_parallel, t_serial / t_parallel,
                identical ? "bit-identical" : "MISMATCH");
}

void bench_sweep(int runs) {
    StepControl control;
    control.t_end = 1.0;
    control.rel_tol = 1e-10;
    control.abs_tol = 1e-12;

    auto run_one = [&](int i) {
        Rng rng = Rng::for_sample(7, static_cast<uint64_t>(i));
        const VortexConfiguration config = random_config(rng, 5, WindingMode::AllPlus);
        return integrate(config, control).times.size();
    };

    std::vector<size_t> serial_out(static_cast<size_t>(runs));
    auto t0 = Clock::now();
    parallel_for_index(runs, false, [&](int i) { serial_out[static_cast<size_t>(i)] = run_one(i); });
    const double t_serial = seconds_since(t0);

    std::vector<size_t> parallel_out(static_cast<size_t>(runs));
    t0 = Clock::now();
    parallel_for_index(runs, true,
                       [&](int i) { parallel_out[static_cast<size_t>(i)] = run_one(i); });
    const double t_parallel = seconds_since(t0);

    std::printf("sweep    runs=%-5d          serial %8.4fs  parallel %8.4fs  speedup %5.2fx  %s\n",
                runs, t_serial, t_parallel, t_serial / t_parallel,
                serial_out == parallel_out ? "identical results" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef VORTEX_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel paths run serially\n");
#endif
    bench_velocity(512, 200);
    bench_velocity(2048, 20);
    bench_sweep(64);
    return 0;
}
