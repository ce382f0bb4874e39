#include "stccpm/analysis/psd.hpp"
#include "stccpm/channel/channel.hpp"
#include "stccpm/receiver/bank.hpp"
#include "stccpm/receiver/viterbi.hpp"
#include "stccpm/stc/encoder.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace stccpm;

namespace {

CpmParams params(int M) {
    CpmParams p;
    p.M = M;
    return p;
}

std::vector<int> symbols(int M, std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pick(0, M - 1);
    std::vector<int> out(n);
    for (int& v : out) v = pick(rng);
    return out;
}

std::vector<ReceivedBlock> received(const CodeScheme& scheme, const CpmParams& p, std::size_t blocks, int n_rx) {
    const auto frame = encode_frame(scheme, p, symbols(p.M, 2 * blocks));
    Rng rng = make_stream(2, 0);
    const auto noise = NoiseParams::from_ebn0(p, 10.0);
    std::vector<ReceivedBlock> out;
    for (const auto& b : frame) {
        ReceivedBlock r;
        r.ch = draw_channel(rng, scheme.n_tx(), n_rx);
        std::vector<std::span<const cplx>> tx;
        for (int m = 0; m < scheme.n_tx(); ++m) tx.emplace_back(b.samples[m]);
        r.y = transmit(tx, r.ch, noise, rng);
        out.push_back(std::move(r));
    }
    return out;
}

void BM_EncodeFrame(benchmark::State& state) {
    const auto scheme = state.range(0) == 0 ? CodeScheme::parallel_l2() : CodeScheme::wang_xia();
    const auto p = params(8);
    const auto idx = symbols(p.M, 400);
    for (auto _ : state) benchmark::DoNotOptimize(encode_frame(scheme, p, idx));
    state.SetItemsProcessed(state.iterations() * 200);
    state.SetLabel(scheme.name());
}
BENCHMARK(BM_EncodeFrame)->Arg(0)->Arg(1);

void BM_BankBuild(benchmark::State& state) {
    const auto scheme = state.range(0) == 0 ? CodeScheme::parallel_l2() : CodeScheme::wang_xia();
    const auto p = params(8);
    for (auto _ : state) benchmark::DoNotOptimize(CandidateBank(scheme, p).num_states());
    state.SetLabel(scheme.name());
}
BENCHMARK(BM_BankBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Arg 0: scheme (0 parallel, 1 wang-xia, 2 parallel on the joint trellis), arg 1: receive antennas.
void BM_Viterbi(benchmark::State& state) {
    const auto scheme = state.range(0) == 1 ? CodeScheme::wang_xia() : CodeScheme::parallel_l2();
    const auto p = params(8);
    const CandidateBank bank(scheme, p, {state.range(0) == 2});
    const auto rx = received(scheme, p, 200, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(viterbi_decode(bank, rx, 10));
    state.SetItemsProcessed(state.iterations() * 200);
    state.SetLabel(scheme.name() + (bank.joint() ? " joint" : " separable"));
}
BENCHMARK(BM_Viterbi)->Args({0, 1})->Args({0, 2})->Args({1, 1})->Args({2, 1})->Unit(benchmark::kMillisecond);

void BM_Welch(benchmark::State& state) {
    auto p = params(8);
    p.samples_per_symbol = 64;
    const auto w = random_transmission(CodeScheme::conventional(), p, 2048, 3);
    for (auto _ : state) benchmark::DoNotOptimize(psd_welch(w[0].samples, w[0].dt, p.T / 3.0));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(w[0].samples.size() * sizeof(cplx)));
}
BENCHMARK(BM_Welch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
