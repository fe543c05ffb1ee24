#include <benchmark/benchmark.h>

#include "potapov/catalog.hpp"
#include "potapov/network.hpp"
#include "potapov/pade.hpp"
#include "potapov/potapov.hpp"
#include "potapov/roots.hpp"
#include "potapov/separation.hpp"
#include "potapov/statespace.hpp"

namespace potapov {
namespace {

/// Poles of example 1 in the strip |Im| <= im_max.
RootSet example1_poles(double im_max) {
    const DelayNetwork net = catalog::example1();
    return find_poles(net, default_pole_strip(net, -im_max, im_max));
}

void bm_eval_tf(benchmark::State& state) {
    const DelayNetwork net = catalog::example1();
    double w = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_tf(net, Complex(0.0, w)));
        w += 0.01;
    }
}
BENCHMARK(bm_eval_tf);

void bm_find_poles_example1(benchmark::State& state) {
    const auto im_max = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(example1_poles(im_max));
    }
}
BENCHMARK(bm_find_poles_example1)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void bm_find_poles_cavity(benchmark::State& state) {
    const DelayNetwork net = build_cavity(0.8, 1.0);
    const auto im_max = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_poles(net, default_pole_strip(net, -im_max, im_max)));
    }
}
BENCHMARK(bm_find_poles_cavity)->Arg(60)->Arg(250)->Unit(benchmark::kMillisecond);

void bm_commensurate_poles(benchmark::State& state) {
    const DelayNetwork net = catalog::fabry_perot(0.9, 1.0);
    const auto im_max = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(commensurate_poles(net, 0.5, default_pole_strip(net, -im_max, im_max)));
    }
}
BENCHMARK(bm_commensurate_poles)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_interpolate(benchmark::State& state) {
    const DelayNetwork net = catalog::example1();
    const MatrixFunction t = transfer_function(net);
    const RootSet poles = example1_poles(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(interpolate(t, poles));
    }
    state.counters["poles"] = static_cast<double>(poles.roots.size());
}
BENCHMARK(bm_interpolate)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void bm_eval_product(benchmark::State& state) {
    const DelayNetwork net = catalog::example1();
    const PotapovProduct prod = interpolate(transfer_function(net), example1_poles(60.0));
    double w = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_product(prod, Complex(0.0, w)));
        w += 0.01;
    }
}
BENCHMARK(bm_eval_product);

void bm_product_to_statespace(benchmark::State& state) {
    const DelayNetwork net = catalog::example1();
    const PotapovProduct prod = interpolate(transfer_function(net), example1_poles(60.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_to_statespace(prod));
    }
}
BENCHMARK(bm_product_to_statespace);

void bm_simulate(benchmark::State& state) {
    const DelayNetwork net = catalog::example1();
    const StateSpace ss = product_to_statespace(interpolate(transfer_function(net), example1_poles(60.0)));
    const std::vector<double> t = uniform_time_grid(20.0, static_cast<int>(state.range(0)));
    const Signal u = sinusoidal_drive(t, CVector::Ones(ss.ports()), 3.0);
    const CVector a0 = CVector::Zero(ss.modes());
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(ss, u, a0));
    }
}
BENCHMARK(bm_simulate)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void bm_pade_network_tf(benchmark::State& state) {
    const DelayNetwork net = catalog::example1();
    const MatrixFunction f = pade_network_tf(net, pade_orders(net, static_cast<int>(state.range(0))));
    double w = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f(Complex(0.0, w)));
        w += 0.01;
    }
}
BENCHMARK(bm_pade_network_tf)->Arg(4)->Arg(16);

void bm_separate_example2(benchmark::State& state) {
    const RationalizedNetwork r = rationalize_delays(catalog::example2());
    const DelayNetwork comm = to_commensurate(r.network, r.t0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(separate(comm));
    }
    state.counters["nodes"] = static_cast<double>(comm.internal_size());
}
BENCHMARK(bm_separate_example2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace potapov

BENCHMARK_MAIN();
