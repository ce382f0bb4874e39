#include "stccpm/receiver/metrics.hpp"

#include "stccpm/error.hpp"

#include <cmath>

namespace stccpm {

double joint_distance(std::span<const std::span<const cplx>> y, const ChannelRealization& ch,
                      std::span<const std::span<const cplx>> s, double dt) {
    if (static_cast<int>(y.size()) != ch.n_rx || static_cast<int>(s.size()) != ch.n_tx) {
        throw ParameterError("joint_distance: antenna count does not match the channel");
    }
    double d = 0.0;
    for (int n = 0; n < ch.n_rx; ++n) {
        const auto yn = y[static_cast<std::size_t>(n)];
        for (std::size_t k = 0; k < yn.size(); ++k) {
            cplx e = yn[k];
            for (int m = 0; m < ch.n_tx; ++m) e -= ch(m, n) * s[static_cast<std::size_t>(m)][k];
            d += std::norm(e);
        }
    }
    return d * dt;
}

void combine_receive(std::span<const std::span<const cplx>> y, const ChannelRealization& ch,
                     std::array<std::vector<cplx>, 2>& r) {
    if (static_cast<int>(y.size()) != ch.n_rx) throw ParameterError("combine_receive: wrong number of receive antennas");
    const std::size_t len = y.empty() ? 0 : y[0].size();
    for (int m = 0; m < ch.n_tx; ++m) {
        auto& out = r[static_cast<std::size_t>(m)];
        out.assign(len, cplx(0.0, 0.0));
        for (int n = 0; n < ch.n_rx; ++n) {
            const cplx w = std::conj(ch(m, n));
            const auto yn = y[static_cast<std::size_t>(n)];
            for (std::size_t k = 0; k < len; ++k) out[k] += w * yn[k];
        }
    }
}

cplx correlate(std::span<const cplx> base, std::span<const cplx> r, double dt) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k) {
        const double a = base[k].real();
        const double b = base[k].imag();
        const double c = r[k].real();
        const double d = r[k].imag();
        re += a * c + b * d;
        im += a * d - b * c;
    }
    return {re * dt, im * dt};
}

StageMetrics::StageMetrics(const CandidateBank& bank) : bank_(bank) {
    for (int m = 0; m < bank.n_tx(); ++m) {
        z_[static_cast<std::size_t>(m)].assign(
            static_cast<std::size_t>(bank.num_bases(m)) * static_cast<std::size_t>(bank.slots_per_stage()), {});
    }
}

void StageMetrics::load(std::span<const std::span<const cplx>> r, MetricCounters* counters) {
    const auto L = static_cast<std::size_t>(bank_.params().samples_per_symbol);
    const double dt = bank_.params().dt();
    for (int m = 0; m < bank_.n_tx(); ++m) {
        const auto rm = r[static_cast<std::size_t>(m)];
        if (rm.size() != L * static_cast<std::size_t>(bank_.slots_per_stage())) {
            throw ParameterError("StageMetrics: received stage has the wrong length");
        }
        for (int j = 0; j < bank_.slots_per_stage(); ++j) {
            for (int id : bank_.bases_in_slot(m, j)) {
                z_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j * bank_.num_bases(m) + id)] =
                    correlate(bank_.base(m, id), rm.subspan(static_cast<std::size_t>(j) * L, L), dt);
                if (counters) ++counters->correlations;
            }
        }
    }
}

double StageMetrics::branch(int state, int branch) const {
    const Transition& tr = bank_.transition(state, branch);
    double metric = 0.0;
    for (int m = 0; m < bank_.n_tx(); ++m) {
        for (int j = 0; j < bank_.slots_per_stage(); ++j) {
            const SlotCandidate& c = tr.slots[m][j];
            const cplx z = z_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j * bank_.num_bases(m) + c.base)];
            metric += c.rotation.real() * z.real() + c.rotation.imag() * z.imag();
        }
    }
    return metric;
}

void StageMetrics::state_metrics(int state, std::span<double> out, MetricCounters* counters) const {
    for (int b = 0; b < bank_.branches(); ++b) out[static_cast<std::size_t>(b)] = branch(state, b);
    if (counters) {
        counters->branch_evaluations += static_cast<std::uint64_t>(bank_.branches());
        ++counters->state_expansions;
    }
}

std::vector<double> slot_metrics(const CandidateBank& bank, int state, std::span<const std::span<const cplx>> r) {
    if (bank.joint()) throw ParameterError("slot_metrics: bank decodes whole blocks");
    StageMetrics sm(bank);
    sm.load(r);
    std::vector<double> out(static_cast<std::size_t>(bank.branches()));
    sm.state_metrics(state, out);
    return out;
}

}  // namespace stccpm
