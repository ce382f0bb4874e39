#pragma once

#include "stccpm/analysis/ber.hpp"
#include "stccpm/analysis/psd.hpp"
#include "stccpm/cpm/params.hpp"
#include "stccpm/rational.hpp"
#include "stccpm/stc/scheme.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stccpm::cli {

inline constexpr const char* kSeedEnv = "CPMSTC_SEED";

// Every knob of a run, whichever command consumes it.
struct RunConfig {
    std::string command;
    std::string scheme = "parallel-l2";
    int n_tx = 0;  // 0: whatever the scheme uses
    int n_rx = 1;
    std::string h = "1/2";
    int M = 8;
    int gamma = 2;
    std::string pulse = "lrec";
    std::string q0 = "lrc";
    std::string power = "total";
    int samples_per_symbol = 0;  // 0: 16 for simulation, 64 for spectra
    std::string ebn0 = "0:2:20";
    std::uint64_t seed = 1;
    std::uint64_t max_blocks = 1'000'000;
    std::uint64_t min_errors = 100;
    int frame_blocks = 200;
    int depth = 10;
    bool force_joint = false;
    int threads = 0;
    int blocks = 0;  // 0: command default
    std::string data = "random";
    int segment = 1024;
    std::string output = ".";
    bool quiet = false;

    CodeScheme code_scheme() const;
    CpmParams cpm_params() const;
    std::vector<double> ebn0_grid() const;
    BerConfig ber_config() const;
    PsdConfig psd_config() const;

    // Throws ParameterError on any inconsistency.
    void validate() const;
};

// "start:step:stop" or a single value; the grid is non-empty and increasing.
std::vector<double> parse_grid(const std::string& text);

}  // namespace stccpm::cli
