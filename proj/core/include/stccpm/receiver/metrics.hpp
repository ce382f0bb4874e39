#pragma once

#include "stccpm/channel/channel.hpp"
#include "stccpm/cpm/waveform.hpp"
#include "stccpm/receiver/bank.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace stccpm {

// Instrumentation shared by the metric and decoder layers.
struct MetricCounters {
    std::uint64_t correlations = 0;        // filterbank outputs computed
    std::uint64_t branch_evaluations = 0;  // branch metrics evaluated
    std::uint64_t state_expansions = 0;    // (stage, state) pairs expanded
};

// One code block as seen by the receiver: y[n] holds 2L samples of Rx antenna n.
struct ReceivedBlock {
    std::vector<std::vector<cplx>> y;
    ChannelRealization ch;

    std::vector<std::span<const cplx>> views() const { return {y.begin(), y.end()}; }
};

// sum_n sum_k |y_n[k] - sum_m alpha_mn s_m[k]|^2 dt.
double joint_distance(std::span<const std::span<const cplx>> y, const ChannelRealization& ch,
                      std::span<const std::span<const cplx>> s, double dt);

// r_m[k] = sum_n conj(alpha_mn) y_n[k]: the receive antennas folded onto each transmit antenna.
void combine_receive(std::span<const std::span<const cplx>> y, const ChannelRealization& ch,
                     std::array<std::vector<cplx>, 2>& r);

// sum_k conj(base[k]) r[k] dt.
cplx correlate(std::span<const cplx> base, std::span<const cplx> r, double dt);

// Filterbank outputs for one stage and the branch metrics built from them.
// Metric of a branch: sum over antennas and slots of Re{conj(rotation) z_base},
// i.e. Re{sum_k y conj(alpha s) dt}. For orthogonal schemes the joint distance
// equals a branch-independent constant minus twice the summed metrics.
class StageMetrics {
public:
    explicit StageMetrics(const CandidateBank& bank);

    // r[m] spans the stage (slots_per_stage * L samples).
    void load(std::span<const std::span<const cplx>> r, MetricCounters* counters = nullptr);

    double branch(int state, int branch) const;

    // Metric of every branch leaving a state, indexed by branch.
    void state_metrics(int state, std::span<double> out, MetricCounters* counters = nullptr) const;

private:
    const CandidateBank& bank_;
    std::array<std::vector<cplx>, 2> z_;  // [antenna][slot * bases + base]
};

// Per-symbol metric vector of one slot stage leaving a state (separable banks).
std::vector<double> slot_metrics(const CandidateBank& bank, int state, std::span<const std::span<const cplx>> r);

}  // namespace stccpm
