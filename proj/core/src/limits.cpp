// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/limits.hpp"

#include "fsrv/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fsrv {

namespace {

constexpr double kPhiMinusOne = kPhi - 1.0;

// a and b of the uniform-seed limit law.
const double kUnifA = std::sqrt((1.0 + kPhi * kPhi) / 12.0);
constexpr double kUnifB = 0.5 * (1.0 + kPhi);

// a and b of the exponential-seed limit law.
const double kExpA = std::sqrt(1.0 + kPhi * kPhi);
constexpr double kExpB = 1.0 + kPhi;

// Density of X_0 + phi X_1 for iid Uniform(0,1): rises, is flat on [1, phi], falls.
double trapezoid_pdf(double u) {
    if (u < 0.0 || u > 1.0 + kPhi) {
        return 0.0;
    }
    if (u <= 1.0) {
        return u / kPhi;
    }
    if (u <= kPhi) {
        return 1.0 / kPhi;
    }
    return (1.0 + kPhi - u) / kPhi;
}

double trapezoid_cdf(double u) {
    if (u <= 0.0) {
        return 0.0;
    }
    if (u >= 1.0 + kPhi) {
        return 1.0;
    }
    if (u <= 1.0) {
        return u * u / (2.0 * kPhi);
    }
    if (u <= kPhi) {
        return 1.0 / (2.0 * kPhi) + (u - 1.0) / kPhi;
    }
    const double r = 1.0 + kPhi - u;
    return 1.0 - r * r / (2.0 * kPhi);
}

Standardization standardize(const Moments& m, const char* what) {
    if (!(m.variance > 0.0)) {
        throw DomainError(std::string(what) + ": variance is zero");
    }
    return {m.mean, std::sqrt(m.variance)};
}

}  // namespace

LimitLaw LimitLaw::of(const FsrvModel& model) {
    const Moments m0 = model.seed0().moments();
    const Moments m1 = model.seed1().moments();
    const double a2 = m0.variance + kPhi * kPhi * m1.variance;
    if (!(m0.variance + m1.variance > 0.0) || !(a2 > 0.0)) {
        throw DomainError("LimitLaw: seeds are degenerate (zero variance)");
    }
    return LimitLaw(model, std::sqrt(a2), m0.mean + kPhi * m1.mean);
}

Density1D LimitLaw::density(const QuadratureConfig& cfg) const {
    return linear_law_density(model_, 1.0 / a_scale_, kPhi / a_scale_, -b_shift_ / a_scale_, cfg);
}

double pdf_limit_numeric(const LimitLaw& law, double x, const QuadratureConfig& cfg) {
    const double inner = scaled_convolution(law.model().seed0().density(cfg),
                                            law.model().seed1().density(cfg), 1.0, kPhi,
                                            law.a_scale() * x + law.b_shift(), cfg);
    return law.a_scale() * inner;
}

double cdf_limit_numeric(const LimitLaw& law, double x, const QuadratureConfig& cfg) {
    const SeedDistribution& s0 = law.model().seed0();
    const SeedDistribution& s1 = law.model().seed1();
    const double u = law.a_scale() * x + law.b_shift();
    const Interval range = s1.effective_support(cfg.tail_mass_cutoff);
    std::vector<double> cuts = s1.breakpoints();
    for (double k : s0.breakpoints()) {
        cuts.push_back((u - k) / kPhi);
    }
    const Interval s0_eff = s0.effective_support(cfg.tail_mass_cutoff);
    cuts.push_back((u - s0_eff.lo) / kPhi);
    cuts.push_back((u - s0_eff.hi) / kPhi);
    const auto integrand = [&](double v) {
        const double p = s1.pdf(v);
        return p == 0.0 ? 0.0 : p * s0.cdf(u - kPhi * v);
    };
    return std::clamp(integrate_piecewise(integrand, range.lo, range.hi, cuts, cfg), 0.0, 1.0);
}

double pdf_limit_exponential_closed(double x) {
    const double c = x * kExpA + kExpB;
    if (c <= 0.0) {
        return 0.0;
    }
    return kExpA * std::exp(-c) * std::expm1(c * (1.0 - 1.0 / kPhi)) / kPhiMinusOne;
}

double cdf_limit_exponential_closed(double x) {
    const double c = x * kExpA + kExpB;
    if (c <= 0.0) {
        return 0.0;
    }
    // 1 - (phi e^{-c/phi} - e^{-c}) / (phi - 1), arranged to avoid cancellation at c = 0.
    const double value = (std::expm1(-c) - kPhi * std::expm1(-c / kPhi)) / kPhiMinusOne;
    return std::clamp(value, 0.0, 1.0);
}

double pdf_limit_uniform_closed(double x) { return kUnifA * trapezoid_pdf(kUnifA * x + kUnifB); }

double cdf_limit_uniform_closed(double x) { return trapezoid_cdf(kUnifA * x + kUnifB); }

SumLaw SumLaw::of(const FsrvModel& model, int n) {
    if (n < 1 || n > kMaxFibIndex - 2) {
        throw DomainError("SumLaw: requires 1 <= n <= " + std::to_string(kMaxFibIndex - 2) +
                          ", got " + std::to_string(n));
    }
    SumLaw law;
    law.n = n;
    law.coeff0 = fib(n + 1);
    law.coeff1 = fib(n + 2) - 1;
    const Moments m = linear_law_moments(model, law.coeff0.convert_to<double>(),
                                         law.coeff1.convert_to<double>(), 0.0);
    law.mean = m.mean;
    law.variance = m.variance;
    return law;
}

double pdf_sum(int n, const FsrvModel& model, double x, const QuadratureConfig& cfg) {
    if (n < 2) {
        throw DomainError("pdf_sum: requires n >= 2, got " + std::to_string(n));
    }
    const SumLaw law = SumLaw::of(model, n);
    return scaled_convolution(model.seed0().density(cfg), model.seed1().density(cfg),
                              law.coeff0.convert_to<double>(), law.coeff1.convert_to<double>(),
                              x, cfg);
}

Density1D sum_density(const FsrvModel& model, int n, const QuadratureConfig& cfg) {
    if (n < 2) {
        throw DomainError("sum_density: requires n >= 2, got " + std::to_string(n));
    }
    const SumLaw law = SumLaw::of(model, n);
    return linear_law_density(model, law.coeff0.convert_to<double>(),
                              law.coeff1.convert_to<double>(), 0.0, cfg);
}

double pdf_sum_exponential_closed(int n, double x) {
    if (n < 2) {
        throw DomainError("pdf_sum_exponential_closed: requires n >= 2, got " +
                          std::to_string(n));
    }
    if (x < 0.0) {
        return 0.0;
    }
    const double a = fib_double(n + 1);
    const double b = (fib(n + 2) - 1).convert_to<double>();
    if (a == b) {
        return x * std::exp(-x / a) / (a * a);
    }
    // B > A for n >= 3: e^{-x/B} (1 - e^{-x (1/A - 1/B)}) / (B - A).
    return -std::exp(-x / b) * std::expm1(-x * (1.0 / a - 1.0 / b)) / (b - a);
}

Standardization normalized_sum_law(int n, const FsrvModel& model) {
    if (n < 2) {
        throw DomainError("normalized_sum_law: requires n >= 2, got " + std::to_string(n));
    }
    const SumLaw law = SumLaw::of(model, n);
    return standardize({law.mean, law.variance}, "normalized_sum_law");
}

Standardization normalized_xn_law(int n, const FsrvModel& model) {
    return standardize(moments_xn(model, n), "normalized_xn_law");
}

Density1D standardized_xn_density(const FsrvModel& model, int n, const QuadratureConfig& cfg) {
    if (n < 2) {
        throw DomainError("standardized_xn_density: requires n >= 2, got " + std::to_string(n));
    }
    const Standardization s = normalized_xn_law(n, model);
    return linear_law_density(model, fib_double(n - 1) / s.sd, fib_double(n) / s.sd,
                              -s.mean / s.sd, cfg);
}

Density1D standardized_sum_density(const FsrvModel& model, int n, const QuadratureConfig& cfg) {
    const Standardization s = normalized_sum_law(n, model);
    const SumLaw law = SumLaw::of(model, n);
    return linear_law_density(model, law.coeff0.convert_to<double>() / s.sd,
                              law.coeff1.convert_to<double>() / s.sd, -s.mean / s.sd, cfg);
}

}  // namespace fsrv
