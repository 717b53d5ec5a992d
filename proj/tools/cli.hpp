// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lorasim::cli {

/// Entry point behind the `lorasim` binary. `args` excludes the program name.
/// Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lorasim::cli
