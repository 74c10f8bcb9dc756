// Copyright 2026 The modspace Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modspace/cli/cli.hpp"

int main(int argc, char** argv) { return modspace::cli::run(argc, argv); }
