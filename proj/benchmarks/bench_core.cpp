#include <benchmark/benchmark.h>

#include "soliplasmon/analysis.hpp"
#include "soliplasmon/dynamics.hpp"
#include "soliplasmon/model.hpp"
#include "soliplasmon/witnesses.hpp"

using namespace soliplasmon;

namespace {

SplitHamiltonian make_h(int cutoff) {
    ModelParams params;
    return build_hamiltonian(params, TwoModeSpace(cutoff, cutoff));
}

void bm_rk4_step(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    const SplitHamiltonian h = make_h(cutoff);
    const StateVector psi0 = fock_state(h.space, 1, 0);
    ComplexMatrix rho = psi0.amplitudes * psi0.amplitudes.adjoint();
    const int d = h.space.total_dim();
    ComplexMatrix out(d, d), scratch(d, d);
    for (auto _ : state) {
        step_rhs_hermitian(rho, h.total, out, scratch);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_rk4_step)->Arg(4)->Arg(8)->Arg(16);

void bm_evolve_unit_time(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    const SplitHamiltonian h = make_h(cutoff);
    const StateVector psi0 = fock_state(h.space, 1, 0);
    EvolutionConfig cfg;
    cfg.t_max = 1.0;
    cfg.sample_stride = 1000;
    for (auto _ : state) {
        evolve(psi0, h, cfg, [](double, const DensityMatrix&) {});
    }
}
BENCHMARK(bm_evolve_unit_time)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void bm_matrix_exponential(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    const SplitHamiltonian h = make_h(cutoff);
    const ComplexMatrix m = Complex{0.0, -1.0} * h.total;
    for (auto _ : state) {
        benchmark::DoNotOptimize(matrix_exponential(m));
    }
}
BENCHMARK(bm_matrix_exponential)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void bm_witness_evaluation(benchmark::State& state) {
    const int cutoff = static_cast<int>(state.range(0));
    const TwoModeSpace space(cutoff, cutoff);
    const SplitHamiltonian h = make_h(cutoff);
    const DensityMatrix rho = exact_propagator(fock_state(space, 1, 0), h, 3.0);
    const WitnessOps ops = make_witness_ops(space);
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_mode_witnesses(rho, ops));
    }
}
BENCHMARK(bm_witness_evaluation)->Arg(4)->Arg(16);

void bm_period_detection(benchmark::State& state) {
    WitnessTrace trace;
    trace.dt_sample = 1e-3;
    trace.samples.resize(50001);
    for (std::size_t k = 0; k < trace.samples.size(); ++k) {
        const double t = 1e-3 * static_cast<double>(k);
        trace.samples[k].t = t;
        trace.samples[k].zeta_ba = std::sin(0.3 * t);
        trace.samples[k].zeta_ab = -std::sin(0.3 * t);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_periods(trace, WitnessId::ba));
    }
    state.SetItemsProcessed(state.iterations() * trace.samples.size());
}
BENCHMARK(bm_period_detection);

void bm_fit_period_law(benchmark::State& state) {
    std::vector<double> ks(40), ts(40);
    for (int i = 0; i < 40; ++i) {
        ks[i] = 0.1 * std::exp(std::log(50.0) * i / 39.0);
        ts[i] = 8.45 / ks[i] - 0.51 / (3 * std::pow(ks[i], 3));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_period_law(ks, ts));
    }
}
BENCHMARK(bm_fit_period_law);

}  // namespace

BENCHMARK_MAIN();
