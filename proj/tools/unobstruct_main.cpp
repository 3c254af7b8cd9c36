// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/cli.hpp"

int main(int argc, char** argv) { return unobstruct::run_cli(argc, argv); }
