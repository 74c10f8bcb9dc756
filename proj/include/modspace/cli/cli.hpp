// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "modspace/verify/config.hpp"

namespace modspace::cli {

// Reads and validates a JSON config. Every failure is ErrorKind::config
// with the offending field path in the message.
ExperimentConfig load_config(const std::string& path);

// modspace <cmd> --config <path> [--out <dir>] [--threads N] [--seed S]
// Exit codes: 0 pass, 1 verification failed, 2 config, 3 hypothesis,
// 4 numerical.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// Fast invariants on built-in grids; one line per invariant.
int selftest(std::ostream& out);

}  // namespace modspace::cli
