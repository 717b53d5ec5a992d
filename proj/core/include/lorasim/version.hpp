// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lorasim Authors

#pragma once

namespace lorasim {
inline constexpr const char* kVersion = "0.1.0";
}
