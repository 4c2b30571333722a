// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fsrv/fib.hpp"
#include "fsrv/numerics.hpp"
#include "fsrv/seeds.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fsrv {

/// Seed families with a closed-form density for X_n.
enum class ClosedForm { exponential, uniform, normal };

const char* to_string(ClosedForm form) noexcept;

/// Independent seeds X_0 ~ seed0, X_1 ~ seed1 generating X_n = a_{n-1} X_0 + a_n X_1.
class FsrvModel {
public:
    FsrvModel(SeedDistribution seed0, SeedDistribution seed1);

    static FsrvModel iid(const SeedDistribution& seed) { return FsrvModel(seed, seed); }

    const SeedDistribution& seed0() const noexcept { return seed0_; }
    const SeedDistribution& seed1() const noexcept { return seed1_; }

    /// Built-in paths only handle independent seeds.
    bool independent() const noexcept { return true; }

    /// Set when both seeds are exponential with one common rate, both
    /// Uniform(0,1), or both standard normal.
    std::optional<ClosedForm> closed_form() const;

    /// Common rate of exponential seeds; DomainError otherwise.
    double exponential_rate() const;

private:
    SeedDistribution seed0_;
    SeedDistribution seed1_;
};

/// Density of c0 X_0 + c1 X_1 + shift (c0, c1 > 0) for the model's seeds,
/// evaluated by scaled convolution. Support and breakpoints are derived from
/// the seeds so the result can be integrated directly.
Density1D linear_law_density(const FsrvModel& model, double c0, double c1, double shift,
                             const QuadratureConfig& cfg = {});

Moments linear_law_moments(const FsrvModel& model, double c0, double c1, double shift);

/// Law of X_n for n >= 2.
struct MarginalLaw {
    int n = 2;
    FibInt coeff_prev;  // a_{n-1}
    FibInt coeff_n;     // a_n
    std::optional<ClosedForm> closed_form;
    double mean = 0.0;
    double variance = 0.0;

    static MarginalLaw of(const FsrvModel& model, int n);
};

/// Quadrature density of X_n (n >= 2) via scaled convolution with
/// c0 = a_{n-1}, c1 = a_n. DomainError for n < 2.
double pdf_numeric(const FsrvModel& model, int n, double x, const QuadratureConfig& cfg = {});

/// Density1D for X_n, numeric route.
Density1D marginal_density(const FsrvModel& model, int n, const QuadratureConfig& cfg = {});

using JointSeedPdf = std::function<double(double, double)>;

/// Rectangle carrying the mass of a joint seed density.
struct BoundingBox {
    Interval x0;
    Interval x1;
};

/// Density of X_n from a joint (possibly dependent) seed density:
/// (1 / (a_n a_{n-1})) * integral f((x - t) / a_{n-1}, t / a_n) dt.
/// DomainError when the box is absent, empty or unbounded.
double pdf_numeric_joint(const JointSeedPdf& joint_pdf, const std::optional<BoundingBox>& box,
                         int n, double x, const QuadratureConfig& cfg = {});

/// Closed density of X_n for iid Exp(rate) seeds; x e^{-x} case at n = 2.
double pdf_exponential_closed(int n, double x, double rate = 1.0);

/// Closed trapezoid density of X_n for iid Uniform(0,1) seeds.
double pdf_uniform_closed(int n, double x);

/// Normal(0, a_{n-1}^2 + a_n^2) density for iid standard normal seeds.
double pdf_normal_closed(int n, double x);

/// Dispatches on model.closed_form(); DomainError when there is none.
double pdf_closed(const FsrvModel& model, int n, double x);

/// Mean a_{n-1} mu_0 + a_n mu_1 and variance a_{n-1}^2 s_0^2 + a_n^2 s_1^2.
Moments moments_xn(const FsrvModel& model, int n);

struct ModePoint {
    double x_star = 0.0;
    double max_density = 0.0;
};

/// Mode and maximum density of X_n for iid Exp(1) seeds, from the closed formulas.
ModePoint mode_exponential(int n);

struct RatioDiagnostics {
    int n = 0;
    double max_ratio = 0.0;   // M_n / M_{n+1}
    double mode_ratio = 0.0;  // x*_{n+1} / x*_n
    double mean_ratio = 0.0;  // E X_{n+1} / E X_n
    double var_ratio = 0.0;   // Var X_{n+1} / Var X_n
};

/// Rows n_lo..n_hi for iid Exp(1) seeds. Requires 3 <= n_lo <= n_hi <= 90.
std::vector<RatioDiagnostics> ratio_diagnostics(int n_lo, int n_hi);

}  // namespace fsrv
