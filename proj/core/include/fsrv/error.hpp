// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsrv {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Index beyond what exact 128-bit Fibonacci arithmetic can represent.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Adaptive quadrature hit its recursion cap. Carries the estimate reached so far.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double partial_estimate)
        : std::runtime_error(what), partial_(partial_estimate) {}

    double partial_estimate() const noexcept { return partial_; }

private:
    double partial_;
};

/// Conditioning density below the configured floor; the predictor is undefined there.
class OutsideSupportError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Every Monte Carlo path was excluded from a statistic.
class DegenerateSampleError : public std::runtime_error {
public:
    DegenerateSampleError(const std::string& what, std::size_t excluded)
        : std::runtime_error(what), excluded_(excluded) {}

    std::size_t excluded() const noexcept { return excluded_; }

private:
    std::size_t excluded_;
};

/// Malformed input file or specification string.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fsrv
