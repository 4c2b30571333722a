// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace fsrv {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        value = 0.0;  // drop the sign of -0
    }
    std::array<char, 64> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), ec == std::errc() ? end : buf.data());
}

}  // namespace fsrv
