// FFTW-backed OpenMP transforms against the serial direct-sum reference,
// and whole solver steps at several thread counts.

#include <benchmark/benchmark.h>

#include <chanreg/parallel.hpp>
#include <chanreg/random_fields.hpp>
#include <chanreg/solver.hpp>
#include <chanreg/transform.hpp>

#include <vector>

using namespace chanreg;

namespace {

std::vector<double> samples(const Grid& g) {
    const auto f = to_physical(random_field(g, Parity::EvenZ, 1, 3, 3));
    return {f.values().begin(), f.values().end()};
}

void BM_forward_fast(benchmark::State& st) {
    parallel::set_threads(static_cast<int>(st.range(1)));
    const int n = static_cast<int>(st.range(0));
    const Grid g(n, n, n / 2 + 1);
    const auto phys = samples(g);
    std::vector<Complex> spec(g.size());
    for (auto _ : st) {
        transform::forward(g, Parity::EvenZ, phys, spec);
        benchmark::DoNotOptimize(spec.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(g.size()));
}

void BM_forward_reference(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const Grid g(n, n, n / 2 + 1);
    const auto phys = samples(g);
    std::vector<Complex> spec(g.size());
    for (auto _ : st) {
        transform::reference::forward(g, Parity::EvenZ, phys, spec);
        benchmark::DoNotOptimize(spec.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(g.size()));
}

void BM_step(benchmark::State& st) {
    parallel::set_threads(static_cast<int>(st.range(1)));
    const int n = static_cast<int>(st.range(0));
    SolverConfig c;
    c.nu = 0.1;
    c.dt = 1e-3;
    c.t_end = 1.0;
    c.nx = c.ny = n;
    c.nz = n / 2 + 1;
    const auto f = ForcingSpec::zero(c.grid());
    const auto s = random_state(c.grid(), 1, 3, 1.0);
    const auto nl = nonlinear(s);
    for (auto _ : st) benchmark::DoNotOptimize(step(s, c, f, nl, &nl));
}

} // namespace

BENCHMARK(BM_forward_fast)->ArgsProduct({{16, 32, 64}, {1, 2, 4}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_forward_reference)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_step)->ArgsProduct({{16, 32}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
