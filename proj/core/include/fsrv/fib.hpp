// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace fsrv {

using FibInt = boost::multiprecision::uint128_t;
using SignedFibInt = boost::multiprecision::int256_t;

/// Largest index whose Fibonacci number fits in 128 unsigned bits.
inline constexpr int kMaxFibIndex = 186;

/// Golden ratio (1 + sqrt 5) / 2, the limit of a_{n+1} / a_n.
inline constexpr double kPhi = 1.61803398874989484820458683436563811772;

/// Exact table a_0..a_max with a_0 = 0, a_1 = 1. Immutable once built.
///
/// Doubles are cached alongside the exact values; they are exact up to
/// index 78 and correctly rounded beyond.
class FibTable {
public:
    explicit FibTable(int max_index = kMaxFibIndex);

    /// Process-wide table up to kMaxFibIndex.
    static const FibTable& instance();

    int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }

    const FibInt& at(int n) const;
    double as_double(int n) const;

private:
    void check(int n) const;

    std::vector<FibInt> values_;
    std::vector<double> doubles_;
};

/// a_n. Throws OverflowError above kMaxFibIndex, DomainError below 0.
FibInt fib(int n);

/// a_n converted to double.
double fib_double(int n);

/// a_m a_{n+1} - a_{m+1} a_n for 0 <= n <= m <= 185, checked against
/// d'Ocagne's identity (-1)^n a_{m-n}.
SignedFibInt docagne(int m, int n);

/// sum_{i=1}^{n} a_i for 1 <= n <= 184, checked against a_{n+2} - 1.
FibInt prefix_sum(int n);

/// a_{n+alpha} / a_n as a double. DomainError when a_n = 0.
double ratio(int n, int alpha);

std::string to_string(const FibInt& value);

}  // namespace fsrv
