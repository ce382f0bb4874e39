#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/stc/scheme.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace stccpm {

struct BerConfig {
    CodeScheme scheme = CodeScheme::parallel_l2();
    CpmParams params;
    int n_rx = 1;
    std::vector<double> ebn0_db;
    std::uint64_t seed = 1;
    std::uint64_t min_errors = 100;
    std::uint64_t max_blocks = 1'000'000;
    int frame_blocks = 200;       // blocks per independent trial
    int frames_per_batch = 16;    // stopping rule is checked between batches
    int depth_blocks = 10;        // 0 decodes each frame without truncation
    bool force_joint = false;
    int threads = 0;              // 0: hardware concurrency

    // Throws ParameterError.
    void validate() const;
};

struct BerRecord {
    std::string scheme;
    int n_tx = 1;
    int n_rx = 1;
    double ebn0_db = 0.0;
    std::uint64_t blocks = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    int bits_per_symbol = 1;

    std::uint64_t bits() const;
};

struct TrialCount {
    std::uint64_t blocks = 0;
    std::uint64_t bit_errors = 0;
};

// One independent frame of frame_blocks random blocks at one grid point. The
// result depends only on (config, point, trial).
TrialCount run_trial(const BerConfig& config, std::size_t point, std::uint64_t trial);

// Simulates every grid point until min_errors bit errors are counted or
// max_blocks blocks are sent. Deterministic in (config, seed), independent of
// the thread count. progress, if set, is called after every grid point.
std::vector<BerRecord> run_ber(const BerConfig& config,
                               const std::function<void(const BerRecord&)>& progress = {});

// Least-squares slope of log10(BER) against Eb/N0 in decades of SNR, fitted over
// the reliable points (at least min_errors errors) within the top decade of SNR.
// Throws ParameterError when fewer than three such points exist.
double diversity_slope(std::span<const BerRecord> records, std::uint64_t min_errors = 100);

// Wilson score interval for a binomial proportion.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
Interval binomial_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

}  // namespace stccpm
