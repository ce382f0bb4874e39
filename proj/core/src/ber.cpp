#include "stccpm/analysis/ber.hpp"

#include "stccpm/channel/channel.hpp"
#include "stccpm/cpm/alphabet.hpp"
#include "stccpm/error.hpp"
#include "stccpm/receiver/bank.hpp"
#include "stccpm/receiver/viterbi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace stccpm {

void BerConfig::validate() const {
    params.validate();
    if (n_rx < 1 || n_rx > 2) throw ParameterError("n_rx must be 1 or 2");
    if (scheme.kind == CodeKind::repetition) {
        throw ParameterError("scheme 'repetition' is not orthogonal and cannot be decoded");
    }
    if (scheme.kind == CodeKind::conventional && n_rx != 1) {
        throw ParameterError("the conventional reference runs as 1x1 only");
    }
    if (ebn0_db.empty()) throw ParameterError("Eb/N0 grid is empty");
    for (std::size_t i = 1; i < ebn0_db.size(); ++i) {
        if (!(ebn0_db[i] > ebn0_db[i - 1])) throw ParameterError("Eb/N0 grid must be increasing");
    }
    if (min_errors == 0) throw ParameterError("error target must be positive");
    if (max_blocks == 0) throw ParameterError("block cap must be positive");
    if (frame_blocks < 1) throw ParameterError("frame length must be positive");
    if (frames_per_batch < 1) throw ParameterError("batch size must be positive");
    if (depth_blocks < 0) throw ParameterError("traceback depth must be nonnegative");
    if (threads < 0) throw ParameterError("thread count must be nonnegative");
}

std::uint64_t BerRecord::bits() const {
    return blocks * 2ULL * static_cast<std::uint64_t>(bits_per_symbol);
}

namespace {

std::shared_ptr<const CandidateBank> shared_bank(const BerConfig& config) {
    static std::mutex mutex;
    static std::map<std::string, std::weak_ptr<const CandidateBank>> cache;
    const auto& p = config.params;
    const std::string key = config.scheme.name() + "/" + to_string(config.scheme.q0) + "/" + std::to_string(p.m0) +
                            "/" + std::to_string(p.p) + "/" + std::to_string(p.M) + "/" + std::to_string(p.gamma) +
                            "/" + to_string(p.pulse) + "/" + std::to_string(p.samples_per_symbol) + "/" +
                            std::to_string(p.Es) + "/" + std::to_string(p.T) + "/" +
                            std::to_string(static_cast<int>(p.power)) + "/" + std::to_string(config.force_joint);
    std::lock_guard lock(mutex);
    if (auto bank = cache[key].lock()) return bank;
    auto bank = std::make_shared<const CandidateBank>(config.scheme, config.params, BankOptions{config.force_joint});
    cache[key] = bank;
    return bank;
}

TrialCount simulate_frame(const BerConfig& config, const CandidateBank& bank, std::size_t point,
                          std::uint64_t trial) {
    const CpmParams& params = config.params;
    const auto L = static_cast<std::size_t>(params.samples_per_symbol);
    const int n_tx = bank.n_tx();
    const int n_rx = config.n_rx;
    const NoiseParams noise = NoiseParams::from_ebn0(params, config.ebn0_db[point]);
    Rng rng = make_stream(config.seed, point, trial);
    std::uniform_int_distribution<int> pick(0, params.M - 1);

    std::vector<int> sent;
    sent.reserve(static_cast<std::size_t>(2 * config.frame_blocks));
    std::array<std::vector<cplx>, 2> tx;
    for (auto& t : tx) t.resize(2 * L);
    std::vector<std::vector<cplx>> rx(static_cast<std::size_t>(n_rx), std::vector<cplx>(2 * L));
    std::vector<std::span<const cplx>> tx_views;
    for (int m = 0; m < n_tx; ++m) tx_views.emplace_back(tx[static_cast<std::size_t>(m)]);
    std::vector<std::span<cplx>> rx_views(rx.begin(), rx.end());
    std::vector<std::span<const cplx>> rx_const(rx.begin(), rx.end());

    ViterbiDecoder decoder(bank, config.depth_blocks);
    std::vector<int> decided;
    decided.reserve(sent.capacity());
    int state = bank.initial_state();
    const std::size_t stage_len = L * static_cast<std::size_t>(bank.slots_per_stage());

    for (int blk = 0; blk < config.frame_blocks; ++blk) {
        const int d1 = pick(rng);
        const int d2 = pick(rng);
        sent.push_back(d1);
        sent.push_back(d2);
        if (bank.joint()) {
            const int b = d1 * params.M + d2;
            for (int m = 0; m < n_tx; ++m) bank.render(state, b, m, tx[static_cast<std::size_t>(m)]);
            state = bank.transition(state, b).next;
        } else {
            for (int j = 0; j < 2; ++j) {
                const int b = j == 0 ? d1 : d2;
                for (int m = 0; m < n_tx; ++m) {
                    bank.render(state, b, m,
                                std::span(tx[static_cast<std::size_t>(m)]).subspan(static_cast<std::size_t>(j) * stage_len,
                                                                                 stage_len));
                }
                state = bank.transition(state, b).next;
            }
        }
        const ChannelRealization ch = draw_channel(rng, n_tx, n_rx);
        transmit_into(tx_views, ch, noise, rng, rx_views);
        decoder.push_block(rx_const, ch);
        const auto part = decoder.take();
        decided.insert(decided.end(), part.begin(), part.end());
    }
    const auto rest = decoder.flush();
    decided.insert(decided.end(), rest.begin(), rest.end());

    TrialCount count;
    count.blocks = static_cast<std::uint64_t>(config.frame_blocks);
    for (std::size_t i = 0; i < sent.size(); ++i) {
        count.bit_errors += static_cast<std::uint64_t>(bit_errors(sent[i], decided[i]));
    }
    return count;
}

}  // namespace

TrialCount run_trial(const BerConfig& config, std::size_t point, std::uint64_t trial) {
    const auto bank = shared_bank(config);
    return simulate_frame(config, *bank, point, trial);
}

std::vector<BerRecord> run_ber(const BerConfig& config, const std::function<void(const BerRecord&)>& progress) {
    config.validate();
    const auto bank = shared_bank(config);
    int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, threads);

    std::vector<BerRecord> records;
    for (std::size_t point = 0; point < config.ebn0_db.size(); ++point) {
        BerRecord rec;
        rec.scheme = config.scheme.name();
        rec.n_tx = config.scheme.n_tx();
        rec.n_rx = config.n_rx;
        rec.ebn0_db = config.ebn0_db[point];
        rec.bits_per_symbol = config.params.bits_per_symbol();
        std::uint64_t trial = 0;
        while (rec.bit_errors < config.min_errors && rec.blocks < config.max_blocks) {
            const std::uint64_t remaining =
                (config.max_blocks - rec.blocks + static_cast<std::uint64_t>(config.frame_blocks) - 1) /
                static_cast<std::uint64_t>(config.frame_blocks);
            const auto batch = static_cast<std::size_t>(
                std::min<std::uint64_t>(static_cast<std::uint64_t>(config.frames_per_batch), remaining));
            std::vector<TrialCount> results(batch);
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i = next++; i < batch; i = next++) {
                    results[i] = simulate_frame(config, *bank, point, trial + i);
                }
            };
            const int n = std::min<int>(threads, static_cast<int>(batch));
            if (n <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < n; ++t) pool.emplace_back(worker);
                for (auto& t : pool) t.join();
            }
            for (const auto& r : results) {
                rec.blocks += r.blocks;
                rec.bit_errors += r.bit_errors;
            }
            trial += batch;
        }
        rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits());
        if (progress) progress(rec);
        records.push_back(rec);
    }
    return records;
}

double diversity_slope(std::span<const BerRecord> records, std::uint64_t min_errors) {
    std::vector<const BerRecord*> reliable;
    for (const auto& r : records) {
        if (r.bit_errors >= min_errors && r.ber > 0.0 && std::isfinite(r.ebn0_db)) reliable.push_back(&r);
    }
    if (reliable.empty()) throw ParameterError("diversity_slope: no reliable points");
    double top = reliable.front()->ebn0_db;
    for (const auto* r : reliable) top = std::max(top, r->ebn0_db);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto* r : reliable) {
        if (r->ebn0_db >= top - 10.0 - 1e-9) {
            x.push_back(r->ebn0_db / 10.0);
            y.push_back(std::log10(r->ber));
        }
    }
    if (x.size() < 3) {
        throw ParameterError("diversity_slope: need at least three reliable points in the top decade, have " +
                             std::to_string(x.size()));
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

Interval binomial_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace stccpm
