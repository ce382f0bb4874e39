#include "stccpm/analysis/psd.hpp"

#include "stccpm/channel/rng.hpp"
#include "stccpm/error.hpp"
#include "stccpm/stc/encoder.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace stccpm {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<double> make_window(WindowKind kind, int n) {
    std::vector<double> w(static_cast<std::size_t>(n), 1.0);
    if (kind == WindowKind::hann) {
        for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * k / n);
    }
    return w;
}

}  // namespace

double Spectrum::total_power() const {
    double s = 0.0;
    for (double p : power) s += p;
    return s * df;
}

std::vector<double> Spectrum::db(double floor_db) const {
    double peak = 0.0;
    for (double p : power) peak = std::max(peak, p);
    const double floor = peak > 0.0 ? peak * std::pow(10.0, -floor_db / 10.0) : 1e-300;
    std::vector<double> out(power.size());
    for (std::size_t k = 0; k < power.size(); ++k) out[k] = 10.0 * std::log10(std::max(power[k], floor));
    return out;
}

double Spectrum::occupied_bandwidth(double fraction) const {
    const double total = total_power();
    if (total <= 0.0) return 0.0;
    const double tail = (1.0 - fraction) / 2.0 * total;
    double acc = 0.0;
    std::size_t lo = 0;
    while (lo < power.size() && acc + power[lo] * df < tail) acc += power[lo++] * df;
    acc = 0.0;
    std::size_t hi = power.size();
    while (hi > lo + 1 && acc + power[hi - 1] * df < tail) acc += power[--hi] * df;
    return f_td[hi - 1] - f_td[lo];
}

Spectrum psd_welch(std::span<const cplx> x, double dt, double Td, const WelchOptions& options) {
    const int N = options.segment;
    if (N < 8) throw ParameterError("psd_welch: segment length must be at least 8");
    if (!(options.overlap >= 0.0 && options.overlap < 1.0)) throw ParameterError("psd_welch: overlap must lie in [0, 1)");
    const auto hop = static_cast<std::size_t>(std::max(1.0, std::floor(N * (1.0 - options.overlap))));
    const auto n = static_cast<std::size_t>(N);
    const std::size_t segments = x.size() < n ? 0 : (x.size() - n) / hop + 1;
    if (segments < static_cast<std::size_t>(std::max(1, options.min_segments))) {
        throw ParameterError("psd_welch: stream too short, " + std::to_string(segments) + " segments of " +
                             std::to_string(N) + " samples, need " + std::to_string(options.min_segments));
    }
    const auto w = make_window(options.window, N);
    double u = 0.0;
    for (double v : w) u += v * v;

    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(N, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    std::vector<double> acc(n, 0.0);
    for (std::size_t s = 0; s < segments; ++s) {
        const std::size_t off = s * hop;
        for (std::size_t k = 0; k < n; ++k) {
            buf[k][0] = w[k] * x[off + k].real();
            buf[k][1] = w[k] * x[off + k].imag();
        }
        fftw_execute(plan);
        for (std::size_t k = 0; k < n; ++k) acc[k] += buf[k][0] * buf[k][0] + buf[k][1] * buf[k][1];
    }
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);

    Spectrum sp;
    sp.df = 1.0 / (N * dt);
    sp.f_td.resize(n);
    sp.power.resize(n);
    const double scale = dt / (u * static_cast<double>(segments));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + n / 2) % n;
        const double f = (static_cast<double>(i) - static_cast<double>(n / 2)) * sp.df;
        sp.f_td[i] = f * Td;
        sp.power[i] = acc[k] * scale;
    }
    return sp;
}

double spectrum_shift(const Spectrum& a, const Spectrum& b, double floor_db) {
    if (a.size() != b.size() || a.size() < 3 || std::abs(a.df - b.df) > 1e-12 * a.df) {
        throw ParameterError("spectrum_shift: spectra are on different grids");
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a.f_td[k] - b.f_td[k]) > 1e-9 * (1.0 + std::abs(a.f_td[k]))) {
            throw ParameterError("spectrum_shift: spectra are on different grids");
        }
    }
    const auto da = a.db(floor_db);
    const auto d_b = b.db(floor_db);
    const std::size_t n = a.size();
    auto cost = [&](long s) {
        double c = 0.0;
        const auto shift = static_cast<std::size_t>(((s % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const double e = da[k] - d_b[(k + shift) % n];
            c += e * e;
        }
        return c;
    };
    const long half = static_cast<long>(n / 2);
    long best = 0;
    double best_cost = cost(0);
    for (long s = -half + 1; s < half; ++s) {
        const double c = cost(s);
        if (c < best_cost) {
            best_cost = c;
            best = s;
        }
    }
    const double cm = cost(best - 1);
    const double cp = cost(best + 1);
    const double denom = cm - 2.0 * best_cost + cp;
    double frac = 0.0;
    if (denom > 0.0) frac = std::clamp(0.5 * (cm - cp) / denom, -0.5, 0.5);
    const double df_td = a.f_td[1] - a.f_td[0];
    return (static_cast<double>(best) + frac) * df_td;
}

std::vector<Waveform> random_transmission(const CodeScheme& scheme, const CpmParams& params, int blocks,
                                          std::uint64_t seed) {
    if (blocks < 1) throw ParameterError("need at least one block");
    Rng rng = make_stream(seed, 0x707364);
    std::uniform_int_distribution<int> pick(0, params.M - 1);
    std::vector<int> symbols(static_cast<std::size_t>(2 * blocks));
    for (int& s : symbols) s = pick(rng);
    const auto encoded = encode_frame(scheme, params, symbols);
    std::vector<Waveform> out;
    for (int m = 0; m < scheme.n_tx(); ++m) out.push_back(antenna_waveform(encoded, m));
    return out;
}

PsdResult simulate_psd(const PsdConfig& config) {
    config.params.validate();
    const auto waves = random_transmission(config.scheme, config.params, config.blocks, config.seed);
    const double Td = config.params.T / config.params.bits_per_symbol();
    PsdResult res;
    for (const auto& w : waves) res.antennas.push_back(psd_welch(w.samples, w.dt, Td, config.welch));
    if (res.antennas.size() == 2) res.shift_td = spectrum_shift(res.antennas[0], res.antennas[1]);
    return res;
}

}  // namespace stccpm
