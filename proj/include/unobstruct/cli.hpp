// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace unobstruct {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitGeneration = 3;
inline constexpr int kExitIo = 4;

/// Runs one command line. `args` excludes the program name. Errors are
/// reported on stderr and mapped to an exit code; nothing is thrown.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace unobstruct
