// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fsrv/fib.hpp"
#include "fsrv/marginal.hpp"
#include "fsrv/numerics.hpp"

namespace fsrv {

/// Limit law Y = (X_0 + phi X_1 - b) / a of the standardized sequence, with
/// a = sqrt(s_0^2 + phi^2 s_1^2) and b = mu_0 + phi mu_1.
class LimitLaw {
public:
    /// DomainError when both seeds have zero variance.
    static LimitLaw of(const FsrvModel& model);

    const FsrvModel& model() const noexcept { return model_; }
    double a_scale() const noexcept { return a_scale_; }
    double b_shift() const noexcept { return b_shift_; }

    /// Density1D of Y for quadrature.
    Density1D density(const QuadratureConfig& cfg = {}) const;

private:
    LimitLaw(FsrvModel model, double a, double b)
        : model_(std::move(model)), a_scale_(a), b_shift_(b) {}

    FsrvModel model_;
    double a_scale_;
    double b_shift_;
};

/// f_Y(x) = a * f_{X_0 + phi X_1}(a x + b), inner density by scaled convolution.
double pdf_limit_numeric(const LimitLaw& law, double x, const QuadratureConfig& cfg = {});

/// F_Y(x) = integral f_1(v) F_0(a x + b - phi v) dv.
double cdf_limit_numeric(const LimitLaw& law, double x, const QuadratureConfig& cfg = {});

/// f_Y for iid exponential seeds. Standardization removes the rate, so this
/// holds for any common rate.
double pdf_limit_exponential_closed(double x);
double cdf_limit_exponential_closed(double x);

/// Trapezoid f_Y and its exact integral for iid Uniform(0,1) seeds.
double pdf_limit_uniform_closed(double x);
double cdf_limit_uniform_closed(double x);

/// Location and scale used to standardize a variable.
struct Standardization {
    double mean = 0.0;
    double sd = 1.0;
};

/// S_n = X_0 + ... + X_n = a_{n+1} X_0 + (a_{n+2} - 1) X_1.
struct SumLaw {
    int n = 1;
    FibInt coeff0;  // a_{n+1}
    FibInt coeff1;  // a_{n+2} - 1
    double mean = 0.0;
    double variance = 0.0;

    /// Requires 1 <= n <= 184.
    static SumLaw of(const FsrvModel& model, int n);
};

/// Density of S_n (n >= 2) by scaled convolution with c0 = a_{n+1},
/// c1 = a_{n+2} - 1, normalized by 1 / (a_{n+1} (a_{n+2} - 1)).
double pdf_sum(int n, const FsrvModel& model, double x, const QuadratureConfig& cfg = {});

Density1D sum_density(const FsrvModel& model, int n, const QuadratureConfig& cfg = {});

/// Density of S_n for iid Exp(1) seeds:
/// (e^{-x/B} - e^{-x/A}) / (B - A), A = a_{n+1}, B = a_{n+2} - 1, and the
/// Gamma(2, A) density when A = B (n = 2).
double pdf_sum_exponential_closed(int n, double x);

/// E S_n and sqrt(Var S_n). DomainError for zero variance.
Standardization normalized_sum_law(int n, const FsrvModel& model);

/// E X_n and sqrt(Var X_n), the standardization of Y_n.
Standardization normalized_xn_law(int n, const FsrvModel& model);

/// Density of Y_n = (X_n - E X_n) / sd(X_n).
Density1D standardized_xn_density(const FsrvModel& model, int n, const QuadratureConfig& cfg = {});

/// Density of (S_n - E S_n) / sd(S_n).
Density1D standardized_sum_density(const FsrvModel& model, int n,
                                   const QuadratureConfig& cfg = {});

}  // namespace fsrv
