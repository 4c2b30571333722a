// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fsrv::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kUsage = 2,
    kNonConvergence = 3,
    kNormDefect = 4,
};

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsrv::cli
