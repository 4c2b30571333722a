// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/fib.hpp"

#include "fsrv/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>

namespace fsrv {

namespace {

void require_index(int n, int max_index, const char* what) {
    if (n < 0) {
        throw DomainError(std::string(what) + ": index " + std::to_string(n) + " is negative");
    }
    if (n > max_index) {
        throw OverflowError(std::string(what) + ": index " + std::to_string(n) +
                            " exceeds the exact 128-bit bound " + std::to_string(max_index));
    }
}

}  // namespace

FibTable::FibTable(int max_index) {
    require_index(max_index, kMaxFibIndex, "FibTable");
    values_.reserve(static_cast<std::size_t>(max_index) + 1);
    values_.emplace_back(0);
    if (max_index >= 1) {
        values_.emplace_back(1);
    }
    for (int n = 2; n <= max_index; ++n) {
        values_.push_back(values_[n - 1] + values_[n - 2]);
    }
    doubles_.reserve(values_.size());
    for (const auto& v : values_) {
        doubles_.push_back(v.convert_to<double>());
    }
}

const FibTable& FibTable::instance() {
    static const FibTable table(kMaxFibIndex);
    return table;
}

void FibTable::check(int n) const { require_index(n, max_index(), "fib"); }

const FibInt& FibTable::at(int n) const {
    check(n);
    return values_[static_cast<std::size_t>(n)];
}

double FibTable::as_double(int n) const {
    check(n);
    return doubles_[static_cast<std::size_t>(n)];
}

FibInt fib(int n) { return FibTable::instance().at(n); }

double fib_double(int n) { return FibTable::instance().as_double(n); }

SignedFibInt docagne(int m, int n) {
    require_index(m, kMaxFibIndex - 1, "docagne");
    require_index(n, kMaxFibIndex - 1, "docagne");
    if (n > m) {
        throw DomainError("docagne: requires n <= m, got m=" + std::to_string(m) +
                          " n=" + std::to_string(n));
    }
    const SignedFibInt lhs = SignedFibInt(fib(m)) * SignedFibInt(fib(n + 1)) -
                             SignedFibInt(fib(m + 1)) * SignedFibInt(fib(n));
    SignedFibInt rhs = SignedFibInt(fib(m - n));
    if (n % 2 == 1) {
        rhs = -rhs;
    }
    if (lhs != rhs) {
        throw std::logic_error("docagne: identity violated at m=" + std::to_string(m) +
                               " n=" + std::to_string(n));
    }
    return lhs;
}

FibInt prefix_sum(int n) {
    if (n < 1) {
        throw DomainError("prefix_sum: requires n >= 1, got " + std::to_string(n));
    }
    require_index(n, kMaxFibIndex - 2, "prefix_sum");
    FibInt sum = 0;
    for (int i = 1; i <= n; ++i) {
        sum += fib(i);
    }
    if (sum != fib(n + 2) - 1) {
        throw std::logic_error("prefix_sum: identity violated at n=" + std::to_string(n));
    }
    return sum;
}

double ratio(int n, int alpha) {
    require_index(n, kMaxFibIndex, "ratio");
    require_index(n + alpha, kMaxFibIndex, "ratio");
    if (n == 0) {
        throw DomainError("ratio: a_0 = 0 cannot be a denominator");
    }
    if (n + alpha <= 78) {
        // Both operands exact in double; one rounding in the division.
        return fib_double(n + alpha) / fib_double(n);
    }
    using Real = boost::multiprecision::cpp_bin_float_quad;
    return (Real(fib(n + alpha)) / Real(fib(n))).convert_to<double>();
}

std::string to_string(const FibInt& value) { return value.str(); }

}  // namespace fsrv
