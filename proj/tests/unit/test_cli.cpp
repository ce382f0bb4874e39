#include "stccpm/cli/commands.hpp"
#include "stccpm/cli/run_config.hpp"
#include "stccpm/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using namespace stccpm;
using namespace stccpm::cli;

namespace {

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("stccpm_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

private:
    fs::path path_;
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "stccpm");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p, std::vector<std::string>* comments = nullptr) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            if (comments) comments->push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::map<std::string, std::string> summary(const std::string& comment) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(comment.substr(2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

class ScopedEnv {
public:
    ScopedEnv(const char* name, const char* value) : name_(name) {
        if (value) {
            ::setenv(name, value, 1);
        } else {
            ::unsetenv(name);
        }
    }
    ~ScopedEnv() { ::unsetenv(name_); }

private:
    const char* name_;
};

fs::path write_config(const TempDir& dir, const std::string& text) {
    const auto p = dir.path() / "run.conf";
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST(ParseGrid, Ranges) {
    const auto g = parse_grid("0:2:20");
    ASSERT_EQ(g.size(), 11u);
    EXPECT_DOUBLE_EQ(g.front(), 0.0);
    EXPECT_DOUBLE_EQ(g.back(), 20.0);
    EXPECT_EQ(parse_grid("7.5"), std::vector<double>{7.5});
    EXPECT_EQ(parse_grid("0:0.5:1").size(), 3u);
    EXPECT_THROW(parse_grid("5:1:0"), ParameterError);
    EXPECT_THROW(parse_grid("0:0:5"), ParameterError);
    EXPECT_THROW(parse_grid("x"), ParameterError);
    EXPECT_THROW(parse_grid(""), ParameterError);
}

TEST(CmdBer, GridRowsAndByteIdenticalRerun) {
    TempDir a, b;
    const std::vector<std::string> base{"ber", "--scheme", "parallel-l2", "--ntx", "2", "--nrx", "1", "--h", "1/2",
                                        "--M", "8", "--gamma", "2", "--ebn0", "0:2:20", "--seed", "42",
                                        "--max-blocks", "400", "--min-errors", "20", "--quiet"};
    auto first = base;
    first.insert(first.end(), {"--out", a.str()});
    auto second = base;
    second.insert(second.end(), {"--out", b.str(), "--threads", "3"});
    ASSERT_EQ(invoke(first).code, kOk);
    ASSERT_EQ(invoke(second).code, kOk);
    const auto rows = read_csv(a.path() / "ber.csv");
    ASSERT_EQ(rows.size(), 12u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"scheme", "n_tx", "n_rx", "ebn0_db", "blocks", "bit_errors", "ber"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 7u);
        EXPECT_EQ(rows[i][0], "parallel-l2");
        EXPECT_EQ(rows[i][1], "2");
        EXPECT_EQ(std::stod(rows[i][3]), 2.0 * static_cast<double>(i - 1));
    }
    EXPECT_EQ(slurp(a.path() / "ber.csv"), slurp(b.path() / "ber.csv"));
    EXPECT_FALSE(fs::exists(a.path() / "ber.csv.partial"));
}

TEST(CmdBer, WangXiaOnTheSameGrid) {
    TempDir d;
    ASSERT_EQ(invoke({"ber", "--scheme", "wang-xia", "--ebn0", "0:2:20", "--max-blocks", "200", "--min-errors", "10",
                   "--quiet", "--out", d.str()})
                  .code,
              kOk);
    const auto rows = read_csv(d.path() / "ber.csv");
    ASSERT_EQ(rows.size(), 12u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][0], "wang-xia");
}

TEST(CmdBer, InvalidConfigLeavesNoFile) {
    TempDir d;
    const auto r = invoke({"ber", "--scheme", "repetition", "--out", d.str()});
    EXPECT_EQ(r.code, kUsage);
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(fs::is_empty(d.path()));
}

TEST(CmdPsd, ParallelHasTwoSpectraAndShift) {
    TempDir d;
    ASSERT_EQ(invoke({"psd", "--scheme", "parallel-l2", "--blocks", "1024", "--quiet", "--out", d.str()}).code, kOk);
    std::vector<std::string> comments;
    const auto rows = read_csv(d.path() / "psd.csv", &comments);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"f_td", "psd_db_tx1", "psd_db_tx2"}));
    EXPECT_EQ(rows.size(), 1025u);
    for (std::size_t i = 1; i < rows.size(); ++i) ASSERT_EQ(rows[i].size(), 3u);
    ASSERT_EQ(comments.size(), 1u);
    const auto kv = summary(comments[0]);
    EXPECT_EQ(kv.at("scheme"), "parallel-l2");
    EXPECT_GT(std::abs(std::stod(kv.at("shift_f_td"))), 0.0);
}

TEST(CmdPsd, ConventionalOmitsSecondColumn) {
    TempDir d;
    ASSERT_EQ(invoke({"psd", "--scheme", "conventional", "--blocks", "1024", "--quiet", "--out", d.str()}).code, kOk);
    std::vector<std::string> comments;
    const auto rows = read_csv(d.path() / "psd.csv", &comments);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"f_td", "psd_db_tx1"}));
    for (std::size_t i = 1; i < rows.size(); ++i) ASSERT_EQ(rows[i].size(), 2u);
    EXPECT_EQ(summary(comments.at(0)).count("shift_f_td"), 0u);
}

TEST(CmdPsd, WangXiaShiftExceedsParallel) {
    TempDir a, b;
    ASSERT_EQ(invoke({"psd", "--scheme", "parallel-l2", "--blocks", "8192", "--quiet", "--out", a.str()}).code, kOk);
    ASSERT_EQ(invoke({"psd", "--scheme", "wang-xia", "--blocks", "8192", "--quiet", "--out", b.str()}).code, kOk);
    std::vector<std::string> ca, cb;
    read_csv(a.path() / "psd.csv", &ca);
    read_csv(b.path() / "psd.csv", &cb);
    const double pa = std::abs(std::stod(summary(ca.at(0)).at("shift_f_td")));
    const double pb = std::abs(std::stod(summary(cb.at(0)).at("shift_f_td")));
    EXPECT_GT(pb, pa);
}

TEST(CmdPsd, TooShortStreamFailsCleanly) {
    TempDir d;
    const auto r = invoke({"psd", "--blocks", "16", "--quiet", "--out", d.str()});
    EXPECT_EQ(r.code, kUsage);
    EXPECT_TRUE(fs::is_empty(d.path()));
}

TEST(CmdVerify, OrthogonalSchemesPass) {
    for (const char* scheme : {"parallel-l2", "parallel-l2-alphabet", "wang-xia", "conventional"}) {
        TempDir d;
        const auto r = invoke({"verify", "--scheme", scheme, "--blocks", "300", "--out", d.str()});
        EXPECT_EQ(r.code, kOk) << scheme << "\n" << r.out;
        EXPECT_NE(r.out.find("PASS"), std::string::npos);
        const auto rows = read_csv(d.path() / "verify.csv");
        EXPECT_EQ(rows[0], (std::vector<std::string>{"check", "value", "threshold", "status"}));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            EXPECT_EQ(rows[i][3], "PASS") << scheme << ' ' << rows[i][0];
            if (rows[i][0] == "max_l2_residual") {
                EXPECT_LT(std::stod(rows[i][1]), 1e-10);
            }
        }
    }
}

TEST(CmdVerify, RepetitionFailsWithFullResidual) {
    TempDir d;
    const auto r = invoke({"verify", "--scheme", "repetition", "--blocks", "100", "--out", d.str()});
    EXPECT_EQ(r.code, kVerifyFailed);
    bool seen = false;
    for (const auto& row : read_csv(d.path() / "verify.csv")) {
        if (row[0] == "max_l2_residual") {
            seen = true;
            EXPECT_NEAR(std::stod(row[1]), 2.0, 1e-9);
            EXPECT_EQ(row[3], "FAIL");
        }
    }
    EXPECT_TRUE(seen);
}

TEST(CmdWaveform, ZeroDataGivesStraightPhaseLines) {
    for (const char* scheme : {"conventional", "parallel-l2"}) {
        TempDir d;
        ASSERT_EQ(invoke({"waveform", "--scheme", scheme, "--data", "zero", "--blocks", "6", "--quiet", "--out", d.str()}).code,
                  kOk);
        const int n_tx = std::string(scheme) == "conventional" ? 1 : 2;
        for (int m = 1; m <= n_tx; ++m) {
            const auto rows = read_csv(d.path() / ("waveform_tx" + std::to_string(m) + ".csv"));
            EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "re", "im", "phase_cycles"}));
            // 6 blocks, 2 symbols each, 16 samples per symbol
            ASSERT_EQ(rows.size(), 1u + 6u * 2u * 16u);
            const double amp = std::hypot(std::stod(rows[1][1]), std::stod(rows[1][2]));
            for (std::size_t i = 1; i < rows.size(); ++i) {
                EXPECT_NEAR(std::hypot(std::stod(rows[i][1]), std::stod(rows[i][2])), amp, 1e-9);
                if (i >= 3) {
                    const double d2 = std::stod(rows[i][3]) - 2.0 * std::stod(rows[i - 1][3]) + std::stod(rows[i - 2][3]);
                    EXPECT_NEAR(d2, 0.0, 1e-9) << scheme << " tx" << m << " row " << i;
                }
            }
        }
    }
}

TEST(CmdWaveform, EnvelopeIsConstant) {
    TempDir d;
    ASSERT_EQ(invoke({"waveform", "--scheme", "wang-xia", "--blocks", "40", "--seed", "3", "--quiet", "--out", d.str()}).code,
              kOk);
    for (int m = 1; m <= 2; ++m) {
        const auto rows = read_csv(d.path() / ("waveform_tx" + std::to_string(m) + ".csv"));
        for (std::size_t i = 1; i < rows.size(); ++i) {
            EXPECT_NEAR(std::hypot(std::stod(rows[i][1]), std::stod(rows[i][2])), std::sqrt(0.5), 1e-9);
        }
    }
}

TEST(CmdWaveform, ParallelAntennaOneEqualsConventional) {
    TempDir a, b;
    const std::vector<std::string> common{"waveform", "--blocks", "25", "--seed", "8", "--power", "per-antenna", "--quiet"};
    auto pa = common;
    pa.insert(pa.end(), {"--scheme", "parallel-l2", "--out", a.str()});
    auto pb = common;
    pb.insert(pb.end(), {"--scheme", "conventional", "--out", b.str()});
    ASSERT_EQ(invoke(pa).code, kOk);
    ASSERT_EQ(invoke(pb).code, kOk);
    EXPECT_EQ(slurp(a.path() / "waveform_tx1.csv"), slurp(b.path() / "waveform_tx1.csv"));
}

TEST(Precedence, FlagOverConfigOverEnvOverDefault) {
    TempDir d;
    const auto conf = write_config(d, "# run settings\nscheme = wang-xia\nseed = 7\nM = 4\n").string();
    struct Case {
        bool flag;
        bool config;
        bool env;
        std::uint64_t seed;
    };
    const std::vector<Case> cases{
        {false, false, false, 1}, {false, false, true, 5}, {false, true, false, 7}, {false, true, true, 7},
        {true, false, false, 9},  {true, false, true, 9},  {true, true, false, 9},  {true, true, true, 9},
    };
    for (const auto& c : cases) {
        ScopedEnv env(kSeedEnv, c.env ? "5" : nullptr);
        std::vector<std::string> args{"stccpm", "verify"};
        if (c.config) args.insert(args.end(), {"--config", conf});
        if (c.flag) args.insert(args.end(), {"--seed", "9"});
        const RunConfig rc = parse_args(args);
        EXPECT_EQ(rc.seed, c.seed) << "flag " << c.flag << " config " << c.config << " env " << c.env;
        EXPECT_EQ(rc.command, "verify");
    }
}

TEST(Precedence, ConfigKeysAndFlagsForOtherOptions) {
    TempDir d;
    const auto conf = write_config(d, "scheme = wang-xia\nM = 4\nebn0 = 0:5:10\n").string();
    const RunConfig def = parse_args({"stccpm", "ber"});
    EXPECT_EQ(def.scheme, "parallel-l2");
    EXPECT_EQ(def.M, 8);
    const RunConfig fromfile = parse_args({"stccpm", "ber", "--config", conf});
    EXPECT_EQ(fromfile.scheme, "wang-xia");
    EXPECT_EQ(fromfile.M, 4);
    EXPECT_EQ(fromfile.ebn0_grid().size(), 3u);
    const RunConfig flagged = parse_args({"stccpm", "ber", "--config", conf, "--scheme", "conventional", "--M", "2"});
    EXPECT_EQ(flagged.scheme, "conventional");
    EXPECT_EQ(flagged.M, 2);
    EXPECT_EQ(flagged.ebn0_grid().size(), 3u);
}

TEST(RunConfig, HIsNormalized) {
    RunConfig c = parse_args({"stccpm", "verify", "--h", "2/4"});
    const auto p = c.cpm_params();
    EXPECT_EQ(p.m0, 1);
    EXPECT_EQ(p.p, 4);
    EXPECT_EQ(parse_args({"stccpm", "psd"}).psd_config().params.samples_per_symbol, 64);
    EXPECT_EQ(c.ber_config().params.samples_per_symbol, 16);
}

TEST(Usage, ErrorsExitWithOne) {
    TempDir d;
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"bogus"},
             {"verify", "--scheme", "bogus"},
             {"verify", "--scheme", "parallel-l2", "--ntx", "1"},
             {"verify", "--h", "abc"},
             {"verify", "--M", "3"},
             {"ber", "--ebn0", "10:1:0"},
             {"ber", "--nrx", "3"},
             {"waveform", "--data", "ones"},
             {"verify", "--no-such-flag"},
         }) {
        auto full = args;
        full.insert(full.end(), {"--out", d.str()});
        const auto r = invoke(full);
        EXPECT_EQ(r.code, kUsage) << (args.empty() ? "<none>" : args[0]);
    }
    EXPECT_TRUE(fs::is_empty(d.path()));
}

TEST(Usage, HelpExitsWithZero) {
    const auto r = invoke({"--help"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Executable, ExitCodes) {
    TempDir d;
    const std::string exe = STCCPM_EXE;
    auto status = [&](const std::string& args) {
        const int raw = std::system((exe + " " + args + " --out " + d.str() + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("verify --scheme parallel-l2 --blocks 50"), 0);
    EXPECT_EQ(status("verify --scheme repetition --blocks 50"), 2);
    EXPECT_EQ(status("verify --scheme nonsense"), 1);
    EXPECT_EQ(status("frobnicate"), 1);
}
