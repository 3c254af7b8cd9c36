// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace unobstruct {

/// Prompting setting: objects named by set-of-mark ids, or by free-form
/// names with pixel coordinates.
enum class Setting { OracleSoM, NLP };

std::string_view to_string(Setting setting);  // "som" / "nlp"
Setting setting_from_string(std::string_view text);  // throws SchemaError

}  // namespace unobstruct
