#include "fsrv/error.hpp"
#include "fsrv/joint.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using fsrv::FsrvModel;
using fsrv::JointLaw;
using fsrv::SeedDistribution;

FsrvModel exp_model() { return FsrvModel::iid(SeedDistribution::exponential()); }
FsrvModel unif_model() { return FsrvModel::iid(SeedDistribution::uniform_unit()); }

TEST(JointLaw, Jacobian) {
    for (int n = 2; n <= 30; ++n) {
        for (int k = 1; k <= 10; ++k) {
            const auto law = JointLaw::of(n, k);
            const fsrv::SignedFibInt det =
                fsrv::SignedFibInt(fsrv::fib(n - 1)) * fsrv::SignedFibInt(fsrv::fib(n + k)) -
                fsrv::SignedFibInt(fsrv::fib(n)) * fsrv::SignedFibInt(fsrv::fib(n + k - 1));
            fsrv::SignedFibInt expected(fsrv::fib(k));
            if (n % 2 == 1) expected = -expected;
            ASSERT_EQ(det, expected) << n << "," << k;
            ASSERT_EQ(law.jacobian(), expected) << n << "," << k;
        }
    }
    EXPECT_THROW(JointLaw::of(1, 3), fsrv::DomainError);
    EXPECT_THROW(JointLaw::of(4, 0), fsrv::DomainError);
    EXPECT_NO_THROW(JointLaw::of(100, 85));
}

TEST(JointLaw, InverseMap) {
    const auto law = JointLaw::of(4, 3);
    const auto [x0, x1] = law.to_seeds(2 * 0.7 + 3 * 0.2, 8 * 0.7 + 13 * 0.2);
    EXPECT_NEAR(x0, 0.7, 1e-14);
    EXPECT_NEAR(x1, 0.2, 1e-14);
}

TEST(JointPdf, Examples) {
    const auto law = JointLaw::of(4, 3);
    EXPECT_NEAR(fsrv::joint_pdf(law, exp_model(), 1.0, 4.2), 0.5 * std::exp(-0.4), 1e-14);
    EXPECT_NEAR(fsrv::joint_pdf(law, exp_model(), 1.0, 4.2), 0.335160, 1e-6);
    EXPECT_EQ(fsrv::joint_pdf(law, exp_model(), 1.0, 3.9), 0.0);
    // Parallelogram interior: x0 = (13x - 3y)/2, x1 = (2y - 8x)/2 both inside (0, 1).
    EXPECT_EQ(fsrv::joint_pdf(law, unif_model(), 1.0, 4.3), 0.5);
    EXPECT_EQ(fsrv::joint_pdf(law, unif_model(), 1.0, 3.0), 0.0);
}

TEST(JointSupport, Examples) {
    const auto law = JointLaw::of(4, 3);
    auto s = fsrv::joint_support(law, exp_model(), 3.0);
    ASSERT_TRUE(s);
    EXPECT_NEAR(s->lo, 12.0, 1e-12);
    EXPECT_NEAR(s->hi, 13.0, 1e-12);
    EXPECT_FALSE(fsrv::joint_support(law, exp_model(), -1.0));
    s = fsrv::joint_support(law, unif_model(), 0.5);
    ASSERT_TRUE(s);
    EXPECT_NEAR(s->lo, 2.0, 1e-12);
    EXPECT_NEAR(s->hi, 6.5 / 3.0, 1e-12);
    EXPECT_FALSE(fsrv::joint_support(law, unif_model(), 5.5));
}

TEST(JointNormalization, Examples) {
    EXPECT_NEAR(fsrv::joint_normalization_check(JointLaw::of(4, 3), unif_model()), 1.0, 1e-6);
    EXPECT_NEAR(fsrv::joint_normalization_check(JointLaw::of(4, 3), exp_model()), 1.0, 1e-6);
    EXPECT_NEAR(fsrv::joint_normalization_check(JointLaw::of(2, 1), exp_model()), 1.0, 1e-6);
    const FsrvModel mixed(SeedDistribution::exponential(), SeedDistribution::uniform_unit());
    EXPECT_NEAR(fsrv::joint_normalization_check(JointLaw::of(5, 2), mixed), 1.0, 1e-6);
}

TEST(JointMarginal, RecoversXnDensity) {
    for (auto [n, k] : {std::pair{4, 3}, {3, 2}, {5, 1}}) {
        const auto law = JointLaw::of(n, k);
        for (const auto& model : {exp_model(), unif_model()}) {
            const double hi = model.closed_form() == fsrv::ClosedForm::exponential ? 40.0
                                                                                   : fsrv::fib_double(n + 1);
            for (int i = 0; i <= 60; ++i) {
                const double x = hi * (i + 0.25) / 61.0;
                ASSERT_NEAR(fsrv::joint_marginal(law, model, x), fsrv::pdf_closed(model, n, x), 1e-6)
                    << n << "," << k << " " << model.seed0().describe() << " x=" << x;
            }
        }
    }
    const auto law = JointLaw::of(4, 3);
    for (double x : {0.3, 2.0, 9.0}) {
        EXPECT_NEAR(fsrv::joint_marginal(law, exp_model(), x), std::exp(-x / 3) - std::exp(-x / 2), 1e-9);
    }
}

TEST(Predict, Examples) {
    const auto law = JointLaw::of(4, 3);
    const double g6 = 22.0 + 2.0 / (1.0 - std::exp(-1.0));
    EXPECT_NEAR(g6, 25.16395, 1e-5);
    EXPECT_NEAR(fsrv::predict_exponential_n4_k3_closed(6.0), g6, 1e-12);
    EXPECT_NEAR(fsrv::predict(law, exp_model(), 6.0), g6, 1e-6);
    // mpmath conditional means (tests/support/reference_values.py).
    EXPECT_NEAR(fsrv::predict_exponential_n4_k3_closed(0.1), 0.41671296274862967544, 1e-13);
    EXPECT_NEAR(fsrv::predict_exponential_n4_k3_closed(20.0), 84.913291377266903549, 1e-11);
    EXPECT_NEAR(fsrv::predict(law, exp_model(), 0.1), 0.41671296274862967544, 1e-6);
    EXPECT_NEAR(fsrv::predict(law, exp_model(), 20.0), 84.913291377266903549, 1e-6);
}

TEST(Predict, ClosedFormLimits) {
    EXPECT_EQ(fsrv::predict_exponential_n4_k3_closed(0.0), 0.0);
    EXPECT_NEAR(fsrv::predict_exponential_n4_k3_closed(1e-9), 25.0 / 6.0 * 1e-9, 1e-20);
    EXPECT_NEAR(fsrv::predict_exponential_n4_k3_closed(1e-4), 25.0 / 6.0 * 1e-4 + 1e-8 / 216.0, 1e-15);
    EXPECT_NEAR(fsrv::predict_exponential_n4_k3_closed(60.0), 258.0, 1e-3);
    EXPECT_THROW(fsrv::predict_exponential_n4_k3_closed(-1.0), fsrv::DomainError);
}

TEST(Predict, WithinConditionalSupport) {
    const auto law = JointLaw::of(4, 3);
    for (int i = 1; i <= 40; ++i) {
        const double x = 0.5 * i;
        const double g = fsrv::predict(law, exp_model(), x);
        EXPECT_GE(g, 4 * x);
        EXPECT_LE(g, 13 * x / 3);
    }
    const auto lu = JointLaw::of(3, 2);
    for (double x : {0.2, 1.0, 1.7, 2.6}) {
        const auto s = fsrv::joint_support(lu, unif_model(), x);
        ASSERT_TRUE(s);
        const double g = fsrv::predict(lu, unif_model(), x);
        EXPECT_GE(g, s->lo);
        EXPECT_LE(g, s->hi);
    }
}

TEST(Predict, MatchesClosedOnGrid) {
    const auto law = JointLaw::of(4, 3);
    double sup = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 0.1 + (20.0 - 0.1) * i / 199.0;
        sup = std::max(sup, std::abs(fsrv::predict(law, exp_model(), x) -
                                     fsrv::predict_exponential_n4_k3_closed(x)));
    }
    EXPECT_LE(sup, 1e-6);
}

TEST(Predict, OutsideSupport) {
    const auto law = JointLaw::of(4, 3);
    EXPECT_THROW(fsrv::predict(law, exp_model(), -1.0), fsrv::OutsideSupportError);
    EXPECT_THROW(fsrv::predict(law, unif_model(), 6.0), fsrv::OutsideSupportError);
    EXPECT_FALSE(fsrv::try_predict(law, unif_model(), 6.0));
    const double xs[] = {-1.0, 1.0, 2.0, 7.0};
    const auto curve = fsrv::prediction_curve(law, unif_model(), xs);
    EXPECT_EQ(curve.skipped, 2u);
    EXPECT_EQ(curve.xs.size(), 2u);
}

TEST(Predict, TowerProperty) {
    const auto law = JointLaw::of(4, 3);
    EXPECT_NEAR(fsrv::predictor_mean(law, exp_model()) / 21.0, 1.0, 1e-4);
    // Uniform seeds: E X_{n+k} = a_{n+k+1} / 2.
    const auto lu = JointLaw::of(3, 2);
    EXPECT_NEAR(fsrv::predictor_mean(lu, unif_model()) / (fsrv::fib_double(6) / 2), 1.0, 1e-4);
}

}  // namespace
