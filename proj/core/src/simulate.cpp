// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/simulate.hpp"

#include "fsrv/error.hpp"
#include "fsrv/fib.hpp"
#include "fsrv/format.hpp"
#include "fsrv/limits.hpp"
#include "fsrv/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

namespace fsrv {

void SimulationConfig::validate() const {
    if (n_paths < 1) {
        throw DomainError("paths must be at least 1");
    }
    if (horizon < 2 || horizon > kMaxHorizon) {
        throw DomainError("horizon must be in [2, 90], got " + std::to_string(horizon));
    }
}

std::vector<double> path_from_seeds(double x0, double x1, int horizon) {
    if (horizon < 1) {
        throw DomainError("horizon must be at least 1");
    }
    std::vector<double> xs(static_cast<std::size_t>(horizon) + 1);
    xs[0] = x0;
    xs[1] = x1;
    for (std::size_t i = 2; i < xs.size(); ++i) {
        xs[i] = xs[i - 2] + xs[i - 1];
    }
    return xs;
}

SeedPair sample_seeds(const SimulationConfig& config, std::size_t path_index) {
    RngStream stream(config.rng_seed, path_index);
    SeedPair p;
    p.x0 = config.model.seed0().sample(stream);
    p.x1 = config.model.seed1().sample(stream);
    return p;
}

std::vector<double> sample_path(const SimulationConfig& config, std::size_t path_index) {
    const SeedPair p = sample_seeds(config, path_index);
    return path_from_seeds(p.x0, p.x1, config.horizon);
}

namespace {

struct Welford {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

struct RatioAccumulator {
    double sum = 0.0;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    std::size_t within = 0;
    std::size_t included = 0;
    std::size_t excluded = 0;

    void add(double xn, double xnext, double tolerance, double exclusion) {
        if (!(std::abs(xn) >= exclusion)) {
            ++excluded;
            return;
        }
        const double z = xnext / xn;
        ++included;
        sum += z;
        min = std::min(min, z);
        max = std::max(max, z);
        if (std::abs(z - kPhi) <= tolerance) {
            ++within;
        }
    }

    RatioStats finish(int n) const {
        RatioStats s;
        s.n = n;
        s.included = included;
        s.excluded = excluded;
        if (included > 0) {
            s.mean = sum / static_cast<double>(included);
            s.min = min;
            s.max = max;
            s.fraction_within = static_cast<double>(within) / static_cast<double>(included);
        }
        return s;
    }
};

}  // namespace

SimulationRun SimulationRun::execute(const SimulationConfig& config, unsigned workers) {
    config.validate();
    SimulationRun run(config);
    const std::size_t n = config.n_paths;
    run.seeds_.resize(n);

    const std::size_t w = std::clamp<std::size_t>(workers, 1, n);
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            run.seeds_[i] = sample_seeds(config, i);
        }
    };
    if (w == 1) {
        fill(0, n);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(w);
        const std::size_t chunk = (n + w - 1) / w;
        for (std::size_t t = 0; t < w; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) {
                threads.emplace_back(fill, begin, end);
            }
        }
        for (auto& th : threads) {
            th.join();
        }
    }

    const auto h = static_cast<std::size_t>(config.horizon);
    std::vector<Welford> steps(h + 1);
    std::vector<RatioAccumulator> ratios(h);
    for (const SeedPair& p : run.seeds_) {
        const auto xs = path_from_seeds(p.x0, p.x1, config.horizon);
        for (std::size_t k = 0; k <= h; ++k) {
            steps[k].add(xs[k]);
        }
        for (std::size_t k = 1; k < h; ++k) {
            ratios[k].add(xs[k], xs[k + 1], kRatioTolerance, kRatioExclusion);
        }
    }
    for (std::size_t k = 0; k <= h; ++k) {
        run.steps_.push_back({static_cast<int>(k), steps[k].mean, steps[k].variance()});
    }
    for (std::size_t k = 1; k < h; ++k) {
        run.ratios_.push_back(ratios[k].finish(static_cast<int>(k)));
    }
    return run;
}

std::vector<double> SimulationRun::path(std::size_t path_index) const {
    const SeedPair& p = seeds_.at(path_index);
    return path_from_seeds(p.x0, p.x1, config_.horizon);
}

std::vector<double> SimulationRun::values_at(int n) const {
    if (n < 0 || n > config_.horizon) {
        throw DomainError("n must be in [0, horizon]");
    }
    std::vector<double> out;
    out.reserve(seeds_.size());
    for (const SeedPair& p : seeds_) {
        double prev = p.x0;
        double cur = p.x1;
        if (n == 0) {
            out.push_back(prev);
            continue;
        }
        for (int i = 2; i <= n; ++i) {
            const double next = prev + cur;
            prev = cur;
            cur = next;
        }
        out.push_back(cur);
    }
    return out;
}

std::vector<double> SimulationRun::sums_at(int n) const {
    if (n < 0 || n > config_.horizon) {
        throw DomainError("n must be in [0, horizon]");
    }
    std::vector<double> out;
    out.reserve(seeds_.size());
    for (const SeedPair& p : seeds_) {
        const auto xs = path_from_seeds(p.x0, p.x1, std::max(1, n));
        double s = 0.0;
        for (int i = 0; i <= n; ++i) {
            s += xs[static_cast<std::size_t>(i)];
        }
        out.push_back(s);
    }
    return out;
}

std::vector<double> SimulationRun::standardized_xn(int n) const {
    const Standardization st = normalized_xn_law(n, config_.model);
    auto xs = values_at(n);
    for (double& x : xs) {
        x = (x - st.mean) / st.sd;
    }
    return xs;
}

std::vector<double> SimulationRun::standardized_sums(int n) const {
    const Standardization st = normalized_sum_law(n, config_.model);
    auto xs = sums_at(n);
    for (double& x : xs) {
        x = (x - st.mean) / st.sd;
    }
    return xs;
}

RatioStats ratio_stats(const SimulationRun& run, int n, double tolerance, double exclusion) {
    if (n < 1 || n >= run.config().horizon) {
        throw DomainError("ratio index must be in [1, horizon - 1]");
    }
    const auto xn = run.values_at(n);
    const auto xnext = run.values_at(n + 1);
    RatioAccumulator acc;
    for (std::size_t i = 0; i < xn.size(); ++i) {
        acc.add(xn[i], xnext[i], tolerance, exclusion);
    }
    if (acc.included == 0) {
        throw DegenerateSampleError("every path has |X_n| below the exclusion threshold",
                                    acc.excluded);
    }
    return acc.finish(n);
}

double ks_statistic(std::vector<double> sample, const RealFn& target_cdf) {
    if (sample.empty()) {
        throw DomainError("empty sample");
    }
    std::sort(sample.begin(), sample.end());
    const auto m = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = target_cdf(sample[i]);
        d = std::max(d, static_cast<double>(i + 1) / m - f);
        d = std::max(d, f - static_cast<double>(i) / m);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw DomainError("empty sample");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

KsResult ks_distance(const SimulationRun& run, int n, const RealFn& target_cdf, KsTarget which) {
    KsResult r;
    auto sample = which == KsTarget::standardized_xn ? run.standardized_xn(n)
                                                     : run.standardized_sums(n);
    r.sample_size = sample.size();
    r.distance = ks_statistic(std::move(sample), target_cdf);
    if (r.sample_size < 100) {
        r.reliable = false;
        r.warning = "fewer than 100 paths; KS distance is unreliable";
    }
    return r;
}

std::string summary_json(const SimulationRun& run) {
    const SimulationConfig& c = run.config();
    nlohmann::ordered_json j;
    j["rng_seed"] = c.rng_seed;
    j["paths"] = c.n_paths;
    j["horizon"] = c.horizon;
    j["seeds"] = {c.model.seed0().describe(), c.model.seed1().describe()};
    auto steps = nlohmann::ordered_json::array();
    for (const auto& s : run.steps()) {
        steps.push_back({{"n", s.n}, {"mean", s.mean}, {"variance", s.variance}});
    }
    j["steps"] = std::move(steps);
    auto ratios = nlohmann::ordered_json::array();
    for (const auto& r : run.ratios()) {
        nlohmann::ordered_json row;
        row["n"] = r.n;
        row["included"] = r.included;
        row["excluded"] = r.excluded;
        if (r.included > 0) {
            row["mean"] = r.mean;
            row["min"] = r.min;
            row["max"] = r.max;
            row["fraction_within_1e-6"] = r.fraction_within;
        } else {
            row["mean"] = nullptr;
        }
        ratios.push_back(std::move(row));
    }
    j["ratios"] = std::move(ratios);
    return j.dump(2);
}

void write_paths_csv(const SimulationRun& run, std::ostream& out) {
    out << "path_index,n,value\n";
    for (std::size_t i = 0; i < run.seed_pairs().size(); ++i) {
        const auto xs = run.path(i);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            out << i << ',' << k << ',' << format_double(xs[k]) << '\n';
        }
    }
}

}  // namespace fsrv
