// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace fsrv {

/// Shortest "%.17g"-style text: 17 significant digits, '.' separator, no
/// grouping. Round-trips through strtod.
std::string format_double(double value);

}  // namespace fsrv
