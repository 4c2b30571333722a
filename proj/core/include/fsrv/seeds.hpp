// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fsrv/numerics.hpp"
#include "fsrv/rng.hpp"

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace fsrv {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Piecewise-linear density on a uniform grid over [lo, hi].
///
/// Node values are rescaled at construction so the interpolant integrates to
/// one (the trapezoid rule is exact for it). The cdf is piecewise quadratic
/// and is inverted in closed form for sampling.
class TabulatedPdf {
public:
    static constexpr std::size_t kMinNodes = 16;

    TabulatedPdf(double lo, double hi, std::vector<double> nodes);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double step() const noexcept { return step_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double p) const;

private:
    double lo_;
    double hi_;
    double step_;
    std::vector<double> nodes_;
    std::vector<double> cdf_nodes_;
};

/// Reads "x,density" rows (header optional, '#' comments skipped). The x
/// column must be uniformly spaced.
TabulatedPdf load_tabulated_csv(const std::filesystem::path& path);
TabulatedPdf parse_tabulated_csv(const std::string& text);

struct ExponentialSeed {
    double rate = 1.0;
};
struct UniformUnitSeed {};
struct StandardNormalSeed {};

/// Law of a seed variable X_0 or X_1.
class SeedDistribution {
public:
    using Kind = std::variant<ExponentialSeed, UniformUnitSeed, StandardNormalSeed, TabulatedPdf>;

    static SeedDistribution exponential(double rate = 1.0);
    static SeedDistribution uniform_unit();
    static SeedDistribution standard_normal();
    static SeedDistribution tabulated(TabulatedPdf table);

    const Kind& kind() const noexcept { return kind_; }

    template <class T>
    bool is() const noexcept {
        return std::holds_alternative<T>(kind_);
    }

    double pdf(double x) const;
    double cdf(double x) const;
    Moments moments() const;

    /// One variate: inverse cdf for exponential, uniform and tabulated seeds,
    /// Box-Muller for the normal.
    double sample(RngStream& stream) const;

    /// True support; endpoints may be infinite.
    Interval support() const;

    /// Support with infinite ends cut where the excluded mass is below tail_mass.
    Interval effective_support(double tail_mass) const;

    /// Points inside the support where the density is not smooth, plus the mean.
    std::vector<double> breakpoints() const;

    /// Density1D view for quadrature, truncated at cfg.tail_mass_cutoff.
    Density1D density(const QuadratureConfig& cfg = {}) const;

    /// Short spec string: "exp:<rate>", "unif01", "normal01", "table".
    std::string describe() const;

private:
    explicit SeedDistribution(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
};

}  // namespace fsrv
