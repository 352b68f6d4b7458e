#include <chrono>
#include <cstdio>
#include <vector>

#include "puccilab/norms.hpp"
#include "puccilab/parallel.hpp"
#include "puccilab/rng.hpp"

using namespace puccilab;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class F>
double time_ms(F&& f, int reps) {
    f();  // warm up
    const double t0 = now_ms();
    for (int i = 0; i < reps; ++i) f();
    return (now_ms() - t0) / reps;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_abs_diff) {
    std::printf("%-28s serial %10.3f ms   parallel %10.3f ms   speedup %5.2fx   max|diff| %g\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms, max_abs_diff);
}

// Batched operator evaluation over random spectra.
void bench_batched_pucci() {
    const std::size_t n = 2'000'000;
    const EllipticityPair e = EllipticityPair::strict(1.0, 2.0);
    std::vector<double> out_serial(n), out_parallel(n);
    auto kernel = [&](std::vector<double>& out, bool parallel) {
        par::for_each_index(
            n,
            [&](std::size_t i) {
                Spectrum s;
                s.values = {uniform01(7, 3 * i) - 0.5, uniform01(7, 3 * i + 1) - 0.5,
                            uniform01(7, 3 * i + 2) - 0.5};
                std::sort(s.values.begin(), s.values.end());
                out[i] = pucci(e, s, OpSign::Plus) - pucci(e, s, OpSign::Minus);
            },
            parallel);
    };
    const double ts = time_ms([&] { kernel(out_serial, false); }, 3);
    const double tp = time_ms([&] { kernel(out_parallel, true); }, 3);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::fabs(out_serial[i] - out_parallel[i]));
    report("batched extremal operator", ts, tp, diff);
}

// Dense residual scan on an exponential-decay instance.
void bench_residual_scan() {
    const ParamsSmallNorm params{3, EllipticityPair::strict(1.0, 2.0), 10};
    const ConstructionInstance inst = build_small_norm(params);
    ResidualSampleSpec spec;
    spec.samples_per_piece = 300'000;
    ResidualReport serial, parallel;
    const double ts =
        time_ms([&] { serial = residual_verify(inst, spec, OpSign::Plus, false, false); }, 3);
    const double tp =
        time_ms([&] { parallel = residual_verify(inst, spec, OpSign::Plus, false, true); }, 3);
    report("residual scan", ts, tp,
           std::fabs(serial.max_normalized - parallel.max_normalized));
}

// Sweep rows with quadrature per row.
void bench_sweep_rows() {
    SweepSpec spec;
    spec.family = Family::SmallNorm;
    spec.base = ParamsSmallNorm{3, EllipticityPair::strict(1.0, 2.0), 10};
    spec.exponent = 1.0;
    for (int k = 4; k < 260; ++k) spec.values.push_back(k);
    SweepTable serial, parallel;
    const double ts = time_ms([&] { serial = run_sweep(spec, false); }, 1);
    const double tp = time_ms([&] { parallel = run_sweep(spec, true); }, 1);
    double diff = 0.0;
    for (std::size_t i = 0; i < serial.rows.size(); ++i)
        diff = std::max(diff, std::fabs(serial.rows[i].quadrature - parallel.rows[i].quadrature));
    report("sweep rows (quadrature)", ts, tp, diff);
}

}  // namespace

int main() {
    std::printf("threads: %d (OpenMP %s)\n", par::max_threads(),
                par::openmp_enabled() ? "enabled" : "disabled");
    bench_batched_pucci();
    bench_residual_scan();
    bench_sweep_rows();
    return 0;
}
