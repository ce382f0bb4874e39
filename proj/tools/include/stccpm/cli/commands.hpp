#pragma once

#include "stccpm/cli/run_config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stccpm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2 };

// Each command writes its files under config.output and returns an exit code.
int cmd_ber(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_psd(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_waveform(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// Parsing only, for tests of flag and config precedence. Throws on bad input.
RunConfig parse_args(const std::vector<std::string>& args);

}  // namespace stccpm::cli
