#include "fsrv/error.hpp"
#include "fsrv/limits.hpp"
#include "fsrv/simulate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <sstream>

namespace {

using fsrv::FsrvModel;
using fsrv::SeedDistribution;
using fsrv::SimulationConfig;
using fsrv::SimulationRun;

FsrvModel exp_model() { return FsrvModel::iid(SeedDistribution::exponential()); }
FsrvModel normal_model() { return FsrvModel::iid(SeedDistribution::standard_normal()); }

TEST(Path, ForcedSeeds) {
    const auto ones = fsrv::path_from_seeds(1.0, 1.0, 40);
    for (int n = 0; n <= 40; ++n) {
        ASSERT_EQ(ones[n], fsrv::fib_double(n + 1)) << n;
    }
    for (double v : fsrv::path_from_seeds(0.0, 0.0, 20)) {
        ASSERT_EQ(v, 0.0);
    }
}

TEST(Path, RecursionMatchesLinearForm) {
    const SimulationConfig cfg{exp_model(), 11, 200, 90};
    for (std::size_t i = 0; i < cfg.n_paths; ++i) {
        const auto seeds = fsrv::sample_seeds(cfg, i);
        const auto xs = fsrv::sample_path(cfg, i);
        ASSERT_EQ(xs.size(), 91u);
        EXPECT_EQ(xs[0], seeds.x0);
        EXPECT_EQ(xs[1], seeds.x1);
        for (int n = 2; n <= 90; ++n) {
            const double lin = fsrv::fib_double(n - 1) * seeds.x0 + fsrv::fib_double(n) * seeds.x1;
            ASSERT_LE(std::abs(xs[n] - lin), 1e-9 * (1 + std::abs(xs[n]))) << i << " " << n;
        }
        double s = 0.0;
        for (int n = 0; n <= 30; ++n) {
            s += xs[n];
            const double lin = fsrv::fib_double(n + 1) * seeds.x0 + (fsrv::fib_double(n + 2) - 1) * seeds.x1;
            ASSERT_LE(std::abs(s - lin), 1e-9 * (1 + std::abs(s))) << i << " " << n;
        }
    }
}

TEST(Config, Validation) {
    EXPECT_THROW((SimulationConfig{exp_model(), 0, 0, 10}.validate()), fsrv::DomainError);
    EXPECT_THROW((SimulationConfig{exp_model(), 0, 10, 1}.validate()), fsrv::DomainError);
    EXPECT_THROW((SimulationConfig{exp_model(), 0, 10, 91}.validate()), fsrv::DomainError);
    EXPECT_NO_THROW((SimulationConfig{exp_model(), 0, 1, 90}.validate()));
}

TEST(Run, DeterministicAcrossWorkers) {
    const SimulationConfig cfg{exp_model(), 5, 3001, 25};
    const auto a = SimulationRun::execute(cfg, 1);
    const auto b = SimulationRun::execute(cfg, 1);
    const auto c = SimulationRun::execute(cfg, 4);
    const auto d = SimulationRun::execute(cfg, 7);
    EXPECT_EQ(fsrv::summary_json(a), fsrv::summary_json(b));
    EXPECT_EQ(fsrv::summary_json(a), fsrv::summary_json(c));
    EXPECT_EQ(fsrv::summary_json(a), fsrv::summary_json(d));
    const SimulationConfig other{exp_model(), 6, 3001, 25};
    EXPECT_NE(fsrv::summary_json(a), fsrv::summary_json(SimulationRun::execute(other, 1)));
}

TEST(Run, PathIndependentOfRunSize) {
    const auto small = SimulationRun::execute({exp_model(), 9, 10, 12}, 1);
    const auto big = SimulationRun::execute({exp_model(), 9, 1000, 12}, 3);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(small.path(i), big.path(i));
    }
}

TEST(Run, MomentAgreement) {
    const std::size_t n = 100000;
    const auto run = SimulationRun::execute({exp_model(), 77, n, 12}, 2);
    for (const auto& s : run.steps()) {
        if (s.n < 2) continue;
        const auto m = fsrv::moments_xn(exp_model(), s.n);
        EXPECT_NEAR(s.mean, m.mean, 4 * std::sqrt(m.variance / n)) << s.n;
        // Var(X_n) <= a_{n+1}^2 and the fourth central moment is bounded by 9 sd^4 for these sums.
        EXPECT_NEAR(s.variance, m.variance, 4 * m.variance * std::sqrt(8.0 / n)) << s.n;
    }
}

TEST(Ratio, ExponentialSeedsConverge) {
    const auto run = SimulationRun::execute({exp_model(), 1, 10000, 41}, 1);
    const auto r = fsrv::ratio_stats(run, 40);
    EXPECT_EQ(r.excluded, 0u);
    EXPECT_EQ(r.included, 10000u);
    EXPECT_EQ(r.fraction_within, 1.0);
    EXPECT_NEAR(r.mean, fsrv::kPhi, 1e-12);
    const auto r5 = fsrv::ratio_stats(run, 5);
    EXPECT_TRUE(std::isfinite(r5.mean));
    // Z_5 = (a_5 X_0 + a_6 X_1) / (a_4 X_0 + a_5 X_1) lies between a_5/a_4 and a_6/a_5.
    EXPECT_GE(r5.min, 8.0 / 5.0);
    EXPECT_LE(r5.max, 5.0 / 3.0);
}

TEST(Ratio, NormalSeedsReportExclusions) {
    const auto run = SimulationRun::execute({normal_model(), 3, 2000, 41}, 1);
    const auto r = fsrv::ratio_stats(run, 40);
    EXPECT_EQ(r.included + r.excluded, 2000u);
    EXPECT_LE(r.fraction_within, 1.0);
    // A huge exclusion threshold drops every path.
    EXPECT_THROW(fsrv::ratio_stats(run, 40, 1e-6, 1e300), fsrv::DegenerateSampleError);
    EXPECT_THROW(fsrv::ratio_stats(run, 41), fsrv::DomainError);
}

TEST(Ratio, ZeroSeedsAreDegenerate) {
    const auto run = SimulationRun::execute({exp_model(), 3, 5, 10}, 1);
    try {
        fsrv::ratio_stats(run, 3, 1e-6, 1e300);
        FAIL();
    } catch (const fsrv::DegenerateSampleError& e) {
        EXPECT_EQ(e.excluded(), 5u);
    }
}

TEST(Ks, Statistic) {
    std::vector<double> u{0.1, 0.2, 0.3, 0.4};
    // Empirical steps at 0.25 .. 1 against the uniform cdf.
    EXPECT_NEAR(fsrv::ks_statistic(u, [](double x) { return x; }), 0.6, 1e-15);
    EXPECT_EQ(fsrv::ks_two_sample(u, u), 0.0);
    EXPECT_NEAR(fsrv::ks_two_sample({0.0, 1.0}, {2.0, 3.0}), 1.0, 1e-15);
}

TEST(Ks, OwnEmpiricalIsZero) {
    const auto run = SimulationRun::execute({exp_model(), 12, 500, 30}, 1);
    const auto ys = run.standardized_xn(30);
    EXPECT_EQ(fsrv::ks_two_sample(ys, ys), 0.0);
}

TEST(Ks, SmallRunWarns) {
    const auto run = SimulationRun::execute({exp_model(), 2, 50, 30}, 1);
    const auto r = fsrv::ks_distance(run, 30, fsrv::cdf_limit_exponential_closed, fsrv::KsTarget::standardized_xn);
    EXPECT_FALSE(r.reliable);
    EXPECT_FALSE(r.warning.empty());
    EXPECT_EQ(r.sample_size, 50u);
}

TEST(Ks, LimitLawFit) {
    const auto run = SimulationRun::execute({exp_model(), 8, 20000, 30}, 1);
    const auto r = fsrv::ks_distance(run, 30, fsrv::cdf_limit_exponential_closed, fsrv::KsTarget::standardized_xn);
    EXPECT_TRUE(r.reliable);
    // 99.9% band for N = 2e4 is about 1.95 / sqrt(N) = 0.0138.
    EXPECT_LE(r.distance, 0.0138);
    const auto s = fsrv::ks_distance(run, 30, fsrv::cdf_limit_exponential_closed, fsrv::KsTarget::standardized_sum);
    EXPECT_LE(s.distance, 0.0138);
}

TEST(Output, PathsCsv) {
    const auto run = SimulationRun::execute({exp_model(), 4, 2, 3}, 1);
    std::ostringstream os;
    fsrv::write_paths_csv(run, os);
    const std::string text = os.str();
    EXPECT_EQ(text.rfind("path_index,n,value\n0,0,", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 2 * 4);
}

TEST(Output, SummaryJsonFields) {
    const auto run = SimulationRun::execute({exp_model(), 4, 20, 5}, 1);
    const auto j = fsrv::summary_json(run);
    for (const char* key : {"\"rng_seed\"", "\"paths\"", "\"horizon\"", "\"steps\"", "\"ratios\"",
                            "\"excluded\""}) {
        EXPECT_NE(j.find(key), std::string::npos) << key;
    }
}

}  // namespace
