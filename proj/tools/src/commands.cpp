#include "stccpm/cli/commands.hpp"

#include "stccpm/analysis/ber.hpp"
#include "stccpm/analysis/psd.hpp"
#include "stccpm/channel/rng.hpp"
#include "stccpm/cpm/alphabet.hpp"
#include "stccpm/error.hpp"
#include "stccpm/stc/encoder.hpp"
#include "stccpm/stc/orthogonality.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace stccpm::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Written under a temporary name and renamed on commit; removed otherwise.
class OutputFile {
public:
    explicit OutputFile(fs::path path) : path_(std::move(path)), tmp_(path_) {
        tmp_ += ".partial";
        fs::remove(path_);
        stream_.open(tmp_, std::ios::binary | std::ios::trunc);
        if (!stream_) throw std::runtime_error("cannot write " + path_.string());
    }
    OutputFile(const OutputFile&) = delete;
    OutputFile& operator=(const OutputFile&) = delete;
    ~OutputFile() {
        if (!committed_) {
            stream_.close();
            std::error_code ec;
            fs::remove(tmp_, ec);
        }
    }

    std::ostream& stream() { return stream_; }
    const fs::path& path() const { return path_; }

    void commit() {
        stream_.flush();
        if (!stream_) throw std::runtime_error("write failed for " + path_.string());
        stream_.close();
        fs::rename(tmp_, path_);
        committed_ = true;
    }

private:
    fs::path path_;
    fs::path tmp_;
    std::ofstream stream_;
    bool committed_ = false;
};

fs::path output_dir(const RunConfig& c) {
    fs::path dir(c.output);
    fs::create_directories(dir);
    return dir;
}

std::vector<double> unwrap(std::vector<double> phase) {
    for (std::size_t k = 1; k < phase.size(); ++k) {
        phase[k] -= std::round(phase[k] - phase[k - 1]);
    }
    return phase;
}

std::vector<EncodedBlock> zero_frame(const CodeScheme& scheme, const CpmParams& params, int blocks) {
    std::vector<EncodedBlock> out;
    EncoderState state = EncoderState::initial(params);
    for (int b = 0; b < blocks; ++b) {
        auto [block, next] = encode_block(scheme, params, state, Rational(0), Rational(0));
        out.push_back(std::move(block));
        state = std::move(next);
    }
    return out;
}

std::vector<EncodedBlock> random_frame(const CodeScheme& scheme, const CpmParams& params, int blocks,
                                       std::uint64_t seed, EncoderState state) {
    Rng rng = make_stream(seed, 0x766572);
    std::uniform_int_distribution<int> pick(0, params.M - 1);
    const Alphabet alphabet = Alphabet::standard(params.M);
    std::vector<EncodedBlock> out;
    out.reserve(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) {
        const int d1 = pick(rng);
        const int d2 = pick(rng);
        auto [block, next] = encode_block(scheme, params, state, alphabet[d1], alphabet[d2]);
        out.push_back(std::move(block));
        state = std::move(next);
    }
    return out;
}

}  // namespace

int cmd_ber(const RunConfig& config, std::ostream&, std::ostream& err) {
    const BerConfig bc = config.ber_config();
    bc.validate();
    OutputFile file(output_dir(config) / "ber.csv");
    auto& os = file.stream();
    os << "scheme,n_tx,n_rx,ebn0_db,blocks,bit_errors,ber\n";
    run_ber(bc, [&](const BerRecord& r) {
        os << r.scheme << ',' << r.n_tx << ',' << r.n_rx << ',' << num(r.ebn0_db) << ',' << r.blocks << ','
           << r.bit_errors << ',' << num(r.ber) << '\n';
        if (!config.quiet) {
            err << r.scheme << ' ' << r.n_tx << 'x' << r.n_rx << " Eb/N0 " << num(r.ebn0_db) << " dB: " << r.bit_errors
                << " errors in " << r.blocks << " blocks, BER " << num(r.ber) << '\n';
        }
    });
    file.commit();
    return kOk;
}

int cmd_psd(const RunConfig& config, std::ostream& out, std::ostream&) {
    const PsdConfig pc = config.psd_config();
    const PsdResult res = simulate_psd(pc);
    OutputFile file(output_dir(config) / "psd.csv");
    auto& os = file.stream();
    const bool two = res.antennas.size() == 2;
    os << (two ? "f_td,psd_db_tx1,psd_db_tx2\n" : "f_td,psd_db_tx1\n");
    std::vector<std::vector<double>> db;
    for (const auto& s : res.antennas) db.push_back(s.db());
    for (std::size_t k = 0; k < res.antennas[0].size(); ++k) {
        os << num(res.antennas[0].f_td[k]);
        for (const auto& d : db) os << ',' << num(d[k]);
        os << '\n';
    }
    os << "# scheme=" << pc.scheme.name();
    if (two) os << ",shift_f_td=" << num(res.shift_td);
    for (std::size_t m = 0; m < res.antennas.size(); ++m) {
        os << ",bw99_tx" << m + 1 << '=' << num(res.antennas[m].occupied_bandwidth(0.99));
    }
    os << '\n';
    file.commit();
    if (!config.quiet) {
        out << pc.scheme.name() << ": ";
        if (two) out << "antenna-2 shift " << num(res.shift_td) << " f*Td, ";
        out << "99% bandwidth";
        for (const auto& s : res.antennas) out << ' ' << num(s.occupied_bandwidth(0.99));
        out << " f*Td\n";
    }
    return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
    const CodeScheme scheme = config.code_scheme();
    const CpmParams params = config.cpm_params();
    const int blocks = config.blocks > 0 ? config.blocks : 1000;

    EncoderState start = EncoderState::initial(params);
    Rng rng = make_stream(config.seed, 0x7468);
    std::uniform_int_distribution<long> grid(0, 2L * params.p - 1);
    for (int m = 0; m < scheme.n_tx(); ++m) start.theta[m] = Rational(grid(rng), 2L * params.p);
    const auto frame = random_frame(scheme, params, blocks, config.seed, start);

    struct Check {
        std::string name;
        double value;
        double threshold;
        bool pass;
    };
    std::vector<Check> checks;

    const double jump = max_phase_jump(frame, params);
    checks.push_back({"max_phase_jump_cycles", jump, 1e-12, jump < 1e-12});

    double env = 0.0;
    const double amp = antenna_amplitude(params, scheme.n_tx());
    for (const auto& b : frame) {
        for (int m = 0; m < b.n_tx; ++m) {
            for (const auto& s : b.samples[m]) env = std::max(env, std::abs(std::abs(s) - amp));
        }
    }
    checks.push_back({"max_envelope_error", env, 1e-12, env < 1e-12});

    if (scheme.n_tx() == 2) {
        double residual = 0.0;
        for (const auto& b : frame) residual = std::max(residual, l2_residual(b, params));
        const double tol = 1e-10 * params.Es;
        checks.push_back({"max_l2_residual", residual, tol, residual < tol});

        // Every symbol context if that is small enough, the random frame otherwise.
        long failures = 0;
        const Alphabet alphabet = Alphabet::standard(params.M);
        const int width = params.gamma + 1;
        const double total = std::pow(static_cast<double>(params.M), width);
        if (total <= 65536.0) {
            const auto count = static_cast<long>(total);
            for (long c = 0; c < count; ++c) {
                long rest = c;
                std::vector<Rational> ctx(static_cast<std::size_t>(width));
                for (int j = width - 1; j >= 0; --j) {
                    ctx[static_cast<std::size_t>(j)] = alphabet[static_cast<int>(rest % params.M)];
                    rest /= params.M;
                }
                const DataBlock block = map_block(scheme, params, ctx, 1);
                if (!check_xi_condition(scheme, params, block)) ++failures;
            }
        } else {
            for (const auto& b : frame) {
                if (!check_xi_condition(scheme, params, b.data)) ++failures;
            }
        }
        checks.push_back({"xi_condition_failures", static_cast<double>(failures), 0.0, failures == 0});
    }

    bool ok = true;
    for (const auto& c : checks) ok = ok && c.pass;

    OutputFile file(output_dir(config) / "verify.csv");
    auto& os = file.stream();
    os << "check,value,threshold,status\n";
    for (const auto& c : checks) {
        os << c.name << ',' << num(c.value) << ',' << num(c.threshold) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    file.commit();

    out << "verify " << scheme.name() << "  h=" << params.h().str() << " M=" << params.M << " gamma=" << params.gamma
        << " pulse=" << to_string(params.pulse) << " blocks=" << blocks << '\n';
    for (const auto& c : checks) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-24s %-14.6g limit %-10.3g %s\n", c.name.c_str(), c.value, c.threshold,
                      c.pass ? "PASS" : "FAIL");
        out << line;
    }
    out << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kVerifyFailed;
}

int cmd_waveform(const RunConfig& config, std::ostream& out, std::ostream&) {
    const CodeScheme scheme = config.code_scheme();
    const CpmParams params = config.cpm_params();
    const int blocks = config.blocks > 0 ? config.blocks : 8;
    const auto frame = config.data == "zero"
                           ? zero_frame(scheme, params, blocks)
                           : random_frame(scheme, params, blocks, config.seed, EncoderState::initial(params));
    const fs::path dir = output_dir(config);
    std::vector<std::unique_ptr<OutputFile>> files;
    for (int m = 0; m < scheme.n_tx(); ++m) {
        files.push_back(std::make_unique<OutputFile>(dir / ("waveform_tx" + std::to_string(m + 1) + ".csv")));
        auto& os = files.back()->stream();
        const Waveform w = antenna_waveform(frame, m);
        const auto phase = unwrap(antenna_phase(frame, m, params));
        os << "t,re,im,phase_cycles\n";
        for (std::size_t k = 0; k < w.samples.size(); ++k) {
            os << num(static_cast<double>(k) * w.dt) << ',' << num(w.samples[k].real()) << ','
               << num(w.samples[k].imag()) << ',' << num(phase[k]) << '\n';
        }
    }
    for (auto& f : files) f->commit();
    if (!config.quiet) {
        out << "wrote " << scheme.n_tx() << " waveform file(s), " << blocks << " blocks, "
            << params.samples_per_symbol << " samples per symbol\n";
    }
    return kOk;
}

namespace {

void add_options(CLI::App& app, RunConfig& c) {
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_config("--config", "", "Read 'key = value' options from a file");
    app.add_option("--scheme", c.scheme, "conventional, parallel-l2, parallel-l2-alphabet, wang-xia, repetition")
        ->capture_default_str();
    app.add_option("--ntx", c.n_tx, "Transmit antennas (must match the scheme)")->capture_default_str();
    app.add_option("--nrx", c.n_rx, "Receive antennas (1 or 2)")->capture_default_str();
    app.add_option("--h", c.h, "Modulation index as a fraction, e.g. 1/2")->capture_default_str();
    app.add_option("--M", c.M, "Alphabet size (power of 2)")->capture_default_str();
    app.add_option("--gamma", c.gamma, "Pulse length in symbols")->capture_default_str();
    app.add_option("--pulse", c.pulse, "Phase pulse: lrec or lrc")->capture_default_str();
    app.add_option("--q0", c.q0, "Smoothing function of the Wang-Xia correction: lrc or lrec")->capture_default_str();
    app.add_option("--power", c.power, "Energy split: total or per-antenna")->capture_default_str();
    app.add_option("--L", c.samples_per_symbol, "Samples per symbol (0: 16, or 64 for psd)")->capture_default_str();
    app.add_option("--ebn0", c.ebn0, "Eb/N0 grid in dB, start:step:stop")->capture_default_str();
    app.add_option("--seed", c.seed, "Master seed")->envname(kSeedEnv)->capture_default_str();
    app.add_option("--max-blocks", c.max_blocks, "Block cap per grid point")->capture_default_str();
    app.add_option("--min-errors", c.min_errors, "Bit errors per grid point")->capture_default_str();
    app.add_option("--frame-blocks", c.frame_blocks, "Blocks per independent frame")->capture_default_str();
    app.add_option("--depth", c.depth, "Traceback depth in code blocks (0: whole frame)")->capture_default_str();
    app.add_flag("--force-joint", c.force_joint, "Decode with the M^2 block trellis");
    app.add_option("--threads", c.threads, "Worker threads (0: all cores)")->capture_default_str();
    app.add_option("--blocks", c.blocks, "Blocks for psd, verify and waveform runs")->capture_default_str();
    app.add_option("--data", c.data, "Waveform data: random or zero")->capture_default_str();
    app.add_option("--segment", c.segment, "Welch segment length")->capture_default_str();
    app.add_option("--out", c.output, "Output directory")->capture_default_str();
    app.add_flag("--quiet", c.quiet, "No progress output");
}

void build(CLI::App& app, RunConfig& c) {
    add_options(app, c);
    app.require_subcommand(1);
    for (const char* name : {"ber", "psd", "verify", "waveform"}) {
        static const std::map<std::string, std::string> help{
            {"ber", "Monte Carlo bit error rate over an Eb/N0 grid -> ber.csv"},
            {"psd", "Welch spectra of each transmit antenna -> psd.csv"},
            {"verify", "Orthogonality and continuity checks -> verify.csv"},
            {"waveform", "Transmit IQ dump -> waveform_tx<m>.csv"},
        };
        app.add_subcommand(name, help.at(name))->fallthrough();
    }
}

void parse_into(CLI::App& app, RunConfig& c, const std::vector<std::string>& args) {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
    for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig c;
    CLI::App app{"Space-time block coded CPM simulator", "stccpm"};
    build(app, c);
    parse_into(app, c, args);
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Space-time block coded CPM simulator", "stccpm"};
    build(app, c);
    try {
        parse_into(app, c, args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    try {
        c.validate();
        if (c.command == "ber") return cmd_ber(c, out, err);
        if (c.command == "psd") return cmd_psd(c, out, err);
        if (c.command == "verify") return cmd_verify(c, out, err);
        if (c.command == "waveform") return cmd_waveform(c, out, err);
        err << "unknown command\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "stccpm " << c.command << ": " << e.what() << '\n';
        return kUsage;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace stccpm::cli
