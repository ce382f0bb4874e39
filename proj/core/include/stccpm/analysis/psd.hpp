#pragma once

#include "stccpm/cpm/params.hpp"
#include "stccpm/cpm/waveform.hpp"
#include "stccpm/stc/scheme.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace stccpm {

enum class WindowKind { hann, rectangular };

struct WelchOptions {
    int segment = 1024;
    double overlap = 0.5;
    WindowKind window = WindowKind::hann;
    int min_segments = 100;
};

// Two-sided power spectral density on an ascending grid centred on f = 0.
struct Spectrum {
    std::vector<double> f_td;   // frequency times the bit duration Td
    std::vector<double> power;  // linear density per unit of f (not f Td)
    double df = 0.0;            // grid spacing in units of f

    std::size_t size() const { return power.size(); }
    // Integral of the density, equal to the mean-square signal value.
    double total_power() const;
    // 10 log10(power), clamped from below at floor_db under the peak.
    std::vector<double> db(double floor_db = 120.0) const;
    // Width in f Td of the band left after trimming (1 - fraction) / 2 of the
    // power from each edge.
    double occupied_bandwidth(double fraction = 0.99) const;
};

// Averaged modified periodogram. Throws ParameterError when fewer than
// options.min_segments segments fit into x.
Spectrum psd_welch(std::span<const cplx> x, double dt, double Td, const WelchOptions& options = {});

// Frequency offset, in f Td, by which b is displaced relative to a: the cyclic
// shift minimizing the L2 distance between the dB spectra, refined by a parabola
// through the neighbouring costs. Throws ParameterError if the grids differ.
double spectrum_shift(const Spectrum& a, const Spectrum& b, double floor_db = 120.0);

struct PsdConfig {
    CodeScheme scheme = CodeScheme::parallel_l2();
    CpmParams params;
    std::uint64_t seed = 1;
    int blocks = 8192;
    WelchOptions welch;
};

struct PsdResult {
    std::vector<Spectrum> antennas;
    double shift_td = 0.0;  // antenna 2 relative to antenna 1; 0 for one antenna
};

// Random-data transmit spectra of every antenna of a scheme.
PsdResult simulate_psd(const PsdConfig& config);

// Transmit waveforms of every antenna for random data drawn from the seed.
std::vector<Waveform> random_transmission(const CodeScheme& scheme, const CpmParams& params, int blocks,
                                          std::uint64_t seed);

}  // namespace stccpm
