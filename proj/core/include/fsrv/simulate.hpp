// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fsrv/marginal.hpp"
#include "fsrv/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fsrv {

inline constexpr int kMaxHorizon = 90;

struct SimulationConfig {
    FsrvModel model;
    std::uint64_t rng_seed = 0;
    std::size_t n_paths = 1;
    int horizon = 2;

    /// DomainError unless n_paths >= 1 and 2 <= horizon <= 90.
    void validate() const;
};

struct SeedPair {
    double x0 = 0.0;
    double x1 = 0.0;
};

/// X_0..X_horizon from the recursion X_n = X_{n-2} + X_{n-1}.
std::vector<double> path_from_seeds(double x0, double x1, int horizon);

/// Seeds of path i, drawn from stream (rng_seed, i): X_0 first, then X_1.
SeedPair sample_seeds(const SimulationConfig& config, std::size_t path_index);

/// Path i of the run described by config.
std::vector<double> sample_path(const SimulationConfig& config, std::size_t path_index);

/// Empirical mean and variance of X_n across paths.
struct StepSummary {
    int n = 0;
    double mean = 0.0;
    double variance = 0.0;
};

/// Statistics of Z_n = X_{n+1} / X_n over paths with |X_n| >= the exclusion threshold.
struct RatioStats {
    int n = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double fraction_within = 0.0;  // share of included paths with |Z_n - phi| <= tolerance
    std::size_t included = 0;
    std::size_t excluded = 0;
};

inline constexpr double kRatioExclusion = 1e-12;
inline constexpr double kRatioTolerance = 1e-6;

/// A completed Monte Carlo run. Only the seed pairs are stored; paths are
/// regenerated on demand by the recursion. Summaries are reduced in path
/// order, so they do not depend on the worker count.
class SimulationRun {
public:
    static SimulationRun execute(const SimulationConfig& config, unsigned workers = 1);

    const SimulationConfig& config() const noexcept { return config_; }
    const std::vector<SeedPair>& seed_pairs() const noexcept { return seeds_; }
    const std::vector<StepSummary>& steps() const noexcept { return steps_; }

    /// Ratio statistics for n = 1..horizon-1, with the given tolerance.
    const std::vector<RatioStats>& ratios() const noexcept { return ratios_; }

    std::vector<double> path(std::size_t path_index) const;

    /// X_n of every path, by recursion.
    std::vector<double> values_at(int n) const;

    /// S_n = X_0 + ... + X_n of every path, summed term by term.
    std::vector<double> sums_at(int n) const;

    /// (X_n - E X_n) / sd(X_n) with analytic moments.
    std::vector<double> standardized_xn(int n) const;

    /// (S_n - E S_n) / sd(S_n) with analytic moments.
    std::vector<double> standardized_sums(int n) const;

private:
    explicit SimulationRun(SimulationConfig config) : config_(std::move(config)) {}

    SimulationConfig config_;
    std::vector<SeedPair> seeds_;
    std::vector<StepSummary> steps_;
    std::vector<RatioStats> ratios_;
};

/// Z_n statistics. DegenerateSampleError when every path is excluded.
RatioStats ratio_stats(const SimulationRun& run, int n, double tolerance = kRatioTolerance,
                       double exclusion = kRatioExclusion);

enum class KsTarget { standardized_xn, standardized_sum };

struct KsResult {
    double distance = 0.0;
    std::size_t sample_size = 0;
    bool reliable = true;
    std::string warning;
};

/// sup |F_empirical - F_target| over the sorted sample.
double ks_statistic(std::vector<double> sample, const RealFn& target_cdf);

/// sup |F_a - F_b| between two empirical cdfs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// KS distance of the standardized X_n or S_n sample against target_cdf.
/// Fewer than 100 paths marks the result unreliable and sets a warning.
KsResult ks_distance(const SimulationRun& run, int n, const RealFn& target_cdf, KsTarget which);

/// Deterministic JSON summary of the run.
std::string summary_json(const SimulationRun& run);

/// "path_index,n,value" rows for every path.
void write_paths_csv(const SimulationRun& run, std::ostream& out);

}  // namespace fsrv
