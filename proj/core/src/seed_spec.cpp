// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/seed_spec.hpp"

#include "fsrv/error.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace fsrv {

namespace {

double parse_rate(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v) || v <= 0.0) {
        throw ParseError("invalid exponential rate in seed spec '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

SeedDistribution parse_seed(std::string_view text) {
    if (text == "unif01") {
        return SeedDistribution::uniform_unit();
    }
    if (text == "normal01") {
        return SeedDistribution::standard_normal();
    }
    if (text.starts_with("exp:")) {
        return SeedDistribution::exponential(parse_rate(text.substr(4), text));
    }
    if (text == "exp") {
        return SeedDistribution::exponential(1.0);
    }
    if (text.starts_with("table:")) {
        const auto path = text.substr(6);
        if (path.empty()) {
            throw ParseError("missing path in seed spec '" + std::string(text) + "'");
        }
        try {
            return SeedDistribution::tabulated(load_tabulated_csv(std::string(path)));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("cannot load table '" + std::string(path) + "': " + e.what());
        }
    }
    throw ParseError("unknown seed family '" + std::string(text) + "'");
}

FsrvModel parse_seed_model(std::string_view text) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        return FsrvModel::iid(parse_seed(text));
    }
    return FsrvModel(parse_seed(text.substr(0, comma)), parse_seed(text.substr(comma + 1)));
}

}  // namespace fsrv
