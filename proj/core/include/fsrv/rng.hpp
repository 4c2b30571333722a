// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace fsrv {

/// Single-owner random stream identified by (seed, stream index).
///
/// Streams are std::mt19937_64 engines keyed by a splitmix64 mix of the pair,
/// so path i of a simulation draws the same variates no matter which worker
/// runs it. Uniforms take the top 53 bits; no std:: distributions are used,
/// keeping the output identical across standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

    /// Uniform on [0, 1).
    double uniform();

    /// Standard normal via the Box-Muller pair method; the second variate of
    /// each pair is cached and returned by the next call.
    double normal();

    std::uint64_t next_u64() { return engine_(); }

    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_index);

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

}  // namespace fsrv
