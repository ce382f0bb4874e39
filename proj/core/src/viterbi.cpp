#include "stccpm/receiver/viterbi.hpp"

#include "stccpm/error.hpp"

#include <limits>

namespace stccpm {

namespace {
constexpr double kUnreached = -std::numeric_limits<double>::infinity();
}

double DecoderStats::metrics_per_state_block() const {
    if (state_expansions == 0) return 0.0;
    return static_cast<double>(branch_evaluations) / static_cast<double>(state_expansions) * stages_per_block;
}

ViterbiDecoder::ViterbiDecoder(const CandidateBank& bank, int depth_blocks)
    : bank_(bank),
      depth_blocks_(depth_blocks),
      depth_stages_(static_cast<std::size_t>(depth_blocks) * static_cast<std::size_t>(bank.stages_per_block())),
      metrics_(bank),
      bm_(static_cast<std::size_t>(bank.branches())) {
    if (depth_blocks < 0) throw ParameterError("traceback depth must be nonnegative");
    stats_.stages_per_block = bank.stages_per_block();
    reset();
}

void ViterbiDecoder::reset() {
    acc_.assign(static_cast<std::size_t>(bank_.num_states()), kUnreached);
    acc_[static_cast<std::size_t>(bank_.initial_state())] = 0.0;
    survivors_.clear();
    released_.clear();
}

int ViterbiDecoder::best_state() const {
    int best = -1;
    double value = kUnreached;
    for (std::size_t s = 0; s < acc_.size(); ++s) {
        if (best < 0 ? acc_[s] > kUnreached : acc_[s] > value) {
            best = static_cast<int>(s);
            value = acc_[s];
        }
    }
    return best;
}

void ViterbiDecoder::stage(std::span<const std::span<const cplx>> r) {
    metrics_.load(r, &stats_);
    const std::size_t S = acc_.size();
    next_.assign(S, kUnreached);
    Survivors surv{std::vector<int>(S, -1), std::vector<int>(S, -1)};
    const int B = bank_.branches();
    for (std::size_t s = 0; s < S; ++s) {
        const double a = acc_[s];
        if (a == kUnreached) continue;
        metrics_.state_metrics(static_cast<int>(s), bm_, &stats_);
        for (int b = 0; b < B; ++b) {
            const auto t = static_cast<std::size_t>(bank_.transition(static_cast<int>(s), b).next);
            const double v = a + bm_[static_cast<std::size_t>(b)];
            if (v > next_[t]) {
                next_[t] = v;
                surv.prev[t] = static_cast<int>(s);
                surv.branch[t] = b;
            }
        }
    }
    double top = kUnreached;
    for (double v : next_) top = std::max(top, v);
    for (double& v : next_) {
        if (v != kUnreached) v -= top;
    }
    acc_.swap(next_);
    survivors_.push_back(std::move(surv));
    ++stats_.stages;
}

void ViterbiDecoder::release(std::size_t count, int from_state) {
    // Trace back through every stored stage and emit the oldest 'count' stages.
    std::vector<int> branches(survivors_.size());
    int s = from_state;
    for (std::size_t i = survivors_.size(); i-- > 0;) {
        branches[i] = survivors_[i].branch[static_cast<std::size_t>(s)];
        s = survivors_[i].prev[static_cast<std::size_t>(s)];
    }
    for (std::size_t i = 0; i < count; ++i) {
        const auto sym = bank_.branch_symbols(branches[i]);
        released_.push_back(sym[0]);
        if (bank_.symbols_per_branch() == 2) released_.push_back(sym[1]);
        survivors_.pop_front();
    }
}

void ViterbiDecoder::push_block(std::span<const std::span<const cplx>> y, const ChannelRealization& ch) {
    if (ch.n_tx != bank_.n_tx()) throw ParameterError("channel has the wrong number of transmit antennas");
    const auto L = static_cast<std::size_t>(bank_.params().samples_per_symbol);
    for (const auto& yn : y) {
        if (yn.size() != 2 * L) throw ParameterError("received block must hold 2L samples per antenna");
    }
    combine_receive(y, ch, r_);
    const std::size_t len = L * static_cast<std::size_t>(bank_.slots_per_stage());
    std::array<std::span<const cplx>, 2> views;
    for (int j = 0; j < bank_.stages_per_block(); ++j) {
        for (int m = 0; m < bank_.n_tx(); ++m) {
            views[static_cast<std::size_t>(m)] =
                std::span<const cplx>(r_[static_cast<std::size_t>(m)]).subspan(static_cast<std::size_t>(j) * len, len);
        }
        stage(std::span(views.data(), static_cast<std::size_t>(bank_.n_tx())));
        if (depth_stages_ > 0 && survivors_.size() > depth_stages_) {
            release(survivors_.size() - depth_stages_, best_state());
        }
    }
    ++stats_.blocks;
}

std::vector<int> ViterbiDecoder::take() {
    std::vector<int> out;
    out.swap(released_);
    return out;
}

std::vector<int> ViterbiDecoder::flush() {
    if (!survivors_.empty()) release(survivors_.size(), best_state());
    std::vector<int> out = take();
    reset();
    return out;
}

std::vector<int> viterbi_decode(const CandidateBank& bank, std::span<const ReceivedBlock> blocks, int depth_blocks,
                                DecoderStats* stats) {
    ViterbiDecoder dec(bank, depth_blocks);
    std::vector<int> out;
    for (const auto& b : blocks) {
        const auto views = b.views();
        dec.push_block(views, b.ch);
        auto part = dec.take();
        out.insert(out.end(), part.begin(), part.end());
    }
    auto rest = dec.flush();
    out.insert(out.end(), rest.begin(), rest.end());
    if (stats) *stats = dec.stats();
    return out;
}

}  // namespace stccpm
