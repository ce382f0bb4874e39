#include "stccpm/cli/run_config.hpp"

#include "stccpm/error.hpp"

#include <cmath>
#include <cstdlib>

namespace stccpm::cli {

namespace {

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParameterError("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw ParameterError("not a number: '" + text + "'");
    return v;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() == 1) return {parse_number(parts[0])};
    if (parts.size() != 3) throw ParameterError("Eb/N0 grid must be 'start:step:stop' or a single value");
    const double a = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double b = parse_number(parts[2]);
    if (!(step > 0.0)) throw ParameterError("Eb/N0 grid step must be positive");
    if (b < a) throw ParameterError("Eb/N0 grid stop lies below its start");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 10000) throw ParameterError("Eb/N0 grid has too many points");
    std::vector<double> grid;
    for (long i = 0; i < n; ++i) grid.push_back(a + static_cast<double>(i) * step);
    return grid;
}

CodeScheme RunConfig::code_scheme() const {
    CodeScheme s = parse_scheme(scheme);
    if (s.kind == CodeKind::wang_xia) s.q0 = parse_pulse_shape(q0);
    return s;
}

CpmParams RunConfig::cpm_params() const {
    Rational hr;
    try {
        hr = Rational::parse(h);
    } catch (const std::invalid_argument& e) {
        throw ParameterError(std::string("--h: ") + e.what());
    }
    if (!(Rational(0) < hr)) throw ParameterError("--h must be positive");
    CpmParams p = CpmParams::with_h(hr, M, gamma);
    p.pulse = parse_pulse_shape(pulse);
    if (samples_per_symbol > 0) {
        p.samples_per_symbol = samples_per_symbol;
    } else {
        p.samples_per_symbol = command == "psd" ? 64 : 16;
    }
    if (power == "total") {
        p.power = PowerSplit::total;
    } else if (power == "per-antenna") {
        p.power = PowerSplit::per_antenna;
    } else {
        throw ParameterError("--power must be 'total' or 'per-antenna'");
    }
    p.validate();
    return p;
}

std::vector<double> RunConfig::ebn0_grid() const { return parse_grid(ebn0); }

BerConfig RunConfig::ber_config() const {
    BerConfig c;
    c.scheme = code_scheme();
    c.params = cpm_params();
    c.n_rx = n_rx;
    c.ebn0_db = ebn0_grid();
    c.seed = seed;
    c.min_errors = min_errors;
    c.max_blocks = max_blocks;
    c.frame_blocks = frame_blocks;
    c.depth_blocks = depth;
    c.force_joint = force_joint;
    c.threads = threads;
    return c;
}

PsdConfig RunConfig::psd_config() const {
    PsdConfig c;
    c.scheme = code_scheme();
    c.params = cpm_params();
    c.seed = seed;
    c.blocks = blocks > 0 ? blocks : 8192;
    c.welch.segment = segment;
    return c;
}

void RunConfig::validate() const {
    const CodeScheme s = code_scheme();
    cpm_params();
    if (n_tx != 0 && n_tx != s.n_tx()) {
        throw ParameterError("--ntx " + std::to_string(n_tx) + " does not match scheme '" + s.name() + "' (" +
                             std::to_string(s.n_tx()) + " antennas)");
    }
    if (n_rx < 1 || n_rx > 2) throw ParameterError("--nrx must be 1 or 2");
    if (blocks < 0) throw ParameterError("--blocks must be nonnegative");
    if (segment < 8) throw ParameterError("--segment must be at least 8");
    if (data != "random" && data != "zero") throw ParameterError("--data must be 'random' or 'zero'");
    if (threads < 0) throw ParameterError("--threads must be nonnegative");
    if (depth < 0) throw ParameterError("--depth must be nonnegative");
    if (command == "ber") ber_config().validate();
}

}  // namespace stccpm::cli
