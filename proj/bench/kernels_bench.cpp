// Serial reference kernels against their OpenMP counterparts.
// Run with OMP_NUM_THREADS set to the number of cores to compare.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "bicrypt/henn/kernels.hpp"
#include "bicrypt/net/bicrypto.hpp"
#include "bicrypt/net/weights.hpp"

using namespace bicrypt;

namespace {

henn::ExecPolicy policy_of(const benchmark::State& state) {
    return state.range(0) ? henn::ExecPolicy::Parallel : henn::ExecPolicy::Serial;
}

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1, 1);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

void BM_ConvLayer(benchmark::State& state) {
    const auto ctx = ckks::make_context(1 << 14, 3, std::ldexp(1.0, 40));
    std::mt19937_64 rng(1);
    Tensor3 x(16, 32, 32);
    x.data = uniform(rng, x.size());
    henn::ConvWeights f{16, 16, 3, 3, uniform(rng, 16 * 16 * 9), uniform(rng, 16)};
    const auto g = henn::encrypt_grid({x}, henn::SlotTiling{1, ctx.slot_count()}, ctx);
    for (auto _ : state) {
        ckks::OpRecorder rec;
        benchmark::DoNotOptimize(henn::conv_layer(g, f, 1, 1, 1, 1, ctx, rec, policy_of(state)));
    }
}

void BM_FcForward(benchmark::State& state) {
    const auto ctx = ckks::make_context(1 << 14, 2, std::ldexp(1.0, 40));
    std::mt19937_64 rng(2);
    henn::Matrix W(512, 256);
    W.data = uniform(rng, W.data.size());
    const auto x = henn::encrypt_flat({uniform(rng, 512)}, henn::SlotTiling{1, ctx.slot_count()}, ctx);
    for (auto _ : state) {
        ckks::OpRecorder rec;
        benchmark::DoNotOptimize(
            henn::fc_forward(x.chunks[0], 0, W, {}, x.tiling, ctx, rec, policy_of(state)));
    }
}

void BM_Cnn3BiNet(benchmark::State& state) {
    const auto net = net::make_network(net::Arch::CNN3, net::NetKind::BiNet);
    const auto w = net::resolve_weights(net, net::make_fixture_weights(net, 1));
    const auto ctx = ckks::make_context(1 << 14, net::network_depth(net) + 1, std::ldexp(1.0, 40));
    std::mt19937_64 rng(3);
    std::vector<net::DecomposedInput> batch;
    for (int i = 0; i < 20; ++i) {
        Tensor3 im(1, 28, 28);
        im.data = uniform(rng, im.size());
        batch.push_back(net::decompose_input(im, 0.1, static_cast<std::uint64_t>(i)));
    }
    const auto layout = net::input_layout(net, packing::Strategy::BHW, 20, ctx.slot_count());
    for (auto _ : state)
        benchmark::DoNotOptimize(net::forward_bicrypto(net, batch, layout, w, ctx, {net::Schedule::Interleaved, policy_of(state)}));
}

}  // namespace

BENCHMARK(BM_ConvLayer)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FcForward)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cnn3BiNet)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
