#pragma once

#include "stccpm/channel/channel.hpp"
#include "stccpm/receiver/bank.hpp"
#include "stccpm/receiver/metrics.hpp"

#include <deque>
#include <span>
#include <vector>

namespace stccpm {

struct DecoderStats : MetricCounters {
    std::uint64_t blocks = 0;
    std::uint64_t stages = 0;
    int stages_per_block = 1;

    // Branch metrics evaluated per trellis state and code block: 2M when the
    // block trellis factors into slot stages, M^2 otherwise.
    double metrics_per_state_block() const;
};

// Maximum-metric sequence detector over the bank's trellis. depth_blocks = 0
// keeps every survivor until flush (exact ML over the frame); otherwise the
// decision for a block is released depth_blocks blocks after it was received.
class ViterbiDecoder {
public:
    explicit ViterbiDecoder(const CandidateBank& bank, int depth_blocks = 10);

    // y[n] holds the 2L samples of receive antenna n for the next block.
    void push_block(std::span<const std::span<const cplx>> y, const ChannelRealization& ch);

    // Released decisions since the last call, as symbol indices in order.
    std::vector<int> take();
    // Decides everything still pending from the best final state and starts a new frame.
    std::vector<int> flush();
    void reset();

    int depth_blocks() const { return depth_blocks_; }
    const DecoderStats& stats() const { return stats_; }

private:
    struct Survivors {
        std::vector<int> prev;
        std::vector<int> branch;
    };

    void stage(std::span<const std::span<const cplx>> r);
    void release(std::size_t count, int from_state);
    int best_state() const;

    const CandidateBank& bank_;
    int depth_blocks_;
    std::size_t depth_stages_;
    StageMetrics metrics_;
    std::vector<double> acc_;
    std::vector<double> next_;
    std::vector<double> bm_;
    std::deque<Survivors> survivors_;
    std::vector<int> released_;
    std::array<std::vector<cplx>, 2> r_;
    DecoderStats stats_;
};

// Decodes a whole frame; the result has two symbols per block.
std::vector<int> viterbi_decode(const CandidateBank& bank, std::span<const ReceivedBlock> blocks,
                                int depth_blocks = 10, DecoderStats* stats = nullptr);

}  // namespace stccpm
