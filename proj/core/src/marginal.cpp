// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/marginal.hpp"

#include "fsrv/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fsrv {

namespace {

void require_order(int n, int min_n, const char* what) {
    if (n < min_n) {
        throw DomainError(std::string(what) + ": requires n >= " + std::to_string(min_n) +
                          ", got " + std::to_string(n));
    }
}

}  // namespace

const char* to_string(ClosedForm form) noexcept {
    switch (form) {
        case ClosedForm::exponential:
            return "exponential";
        case ClosedForm::uniform:
            return "uniform";
        case ClosedForm::normal:
            return "normal";
    }
    return "unknown";
}

FsrvModel::FsrvModel(SeedDistribution seed0, SeedDistribution seed1)
    : seed0_(std::move(seed0)), seed1_(std::move(seed1)) {}

std::optional<ClosedForm> FsrvModel::closed_form() const {
    if (seed0_.is<ExponentialSeed>() && seed1_.is<ExponentialSeed>() &&
        std::get<ExponentialSeed>(seed0_.kind()).rate ==
            std::get<ExponentialSeed>(seed1_.kind()).rate) {
        return ClosedForm::exponential;
    }
    if (seed0_.is<UniformUnitSeed>() && seed1_.is<UniformUnitSeed>()) {
        return ClosedForm::uniform;
    }
    if (seed0_.is<StandardNormalSeed>() && seed1_.is<StandardNormalSeed>()) {
        return ClosedForm::normal;
    }
    return std::nullopt;
}

double FsrvModel::exponential_rate() const {
    if (closed_form() != ClosedForm::exponential) {
        throw DomainError("exponential_rate: seeds are not iid exponential");
    }
    return std::get<ExponentialSeed>(seed0_.kind()).rate;
}

Density1D linear_law_density(const FsrvModel& model, double c0, double c1, double shift,
                             const QuadratureConfig& cfg) {
    if (!(c0 > 0.0) || !(c1 > 0.0)) {
        throw DomainError("linear_law_density: coefficients must be positive");
    }
    Density1D d0 = model.seed0().density(cfg);
    Density1D d1 = model.seed1().density(cfg);
    const Interval s0 = d0.support;
    const Interval s1 = d1.support;

    Density1D law;
    law.support = {c0 * s0.lo + c1 * s1.lo + shift, c0 * s0.hi + c1 * s1.hi + shift};
    // Jumps of the seed densities sit at their support ends; their pairwise
    // sums are where the combined density can kink.
    for (double e0 : {s0.lo, s0.hi}) {
        for (double e1 : {s1.lo, s1.hi}) {
            law.breakpoints.push_back(c0 * e0 + c1 * e1 + shift);
        }
    }
    const Moments m = linear_law_moments(model, c0, c1, shift);
    const double sd = std::sqrt(m.variance);
    for (double k : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        law.breakpoints.push_back(m.mean - k * sd);
        law.breakpoints.push_back(m.mean + k * sd);
    }
    law.pdf = [d0 = std::move(d0), d1 = std::move(d1), c0, c1, shift, cfg](double x) {
        return scaled_convolution(d0, d1, c0, c1, x - shift, cfg);
    };
    return law;
}

Moments linear_law_moments(const FsrvModel& model, double c0, double c1, double shift) {
    const Moments m0 = model.seed0().moments();
    const Moments m1 = model.seed1().moments();
    return {c0 * m0.mean + c1 * m1.mean + shift, c0 * c0 * m0.variance + c1 * c1 * m1.variance};
}

MarginalLaw MarginalLaw::of(const FsrvModel& model, int n) {
    require_order(n, 2, "MarginalLaw");
    MarginalLaw law;
    law.n = n;
    law.coeff_prev = fib(n - 1);
    law.coeff_n = fib(n);
    law.closed_form = model.closed_form();
    const Moments m = moments_xn(model, n);
    law.mean = m.mean;
    law.variance = m.variance;
    return law;
}

double pdf_numeric(const FsrvModel& model, int n, double x, const QuadratureConfig& cfg) {
    require_order(n, 2, "pdf_numeric");
    return scaled_convolution(model.seed0().density(cfg), model.seed1().density(cfg),
                              fib_double(n - 1), fib_double(n), x, cfg);
}

Density1D marginal_density(const FsrvModel& model, int n, const QuadratureConfig& cfg) {
    require_order(n, 2, "marginal_density");
    return linear_law_density(model, fib_double(n - 1), fib_double(n), 0.0, cfg);
}

double pdf_numeric_joint(const JointSeedPdf& joint_pdf, const std::optional<BoundingBox>& box,
                         int n, double x, const QuadratureConfig& cfg) {
    require_order(n, 2, "pdf_numeric_joint");
    if (!box) {
        throw DomainError("pdf_numeric_joint: a bounding box for the joint density is required");
    }
    if (!box->x0.finite() || !box->x1.finite() || box->x0.empty() || box->x1.empty()) {
        throw DomainError("pdf_numeric_joint: bounding box must be finite and nonempty");
    }
    const double c0 = fib_double(n - 1);
    const double c1 = fib_double(n);
    // v = t / a_n is the X_1 coordinate; X_0 = (x - a_n v) / a_{n-1}.
    const Interval from_x0{(x - c0 * box->x0.hi) / c1, (x - c0 * box->x0.lo) / c1};
    const Interval range = intersect(box->x1, from_x0);
    if (range.empty() || range.width() == 0.0) {
        return 0.0;
    }
    const auto integrand = [&](double v) {
        return joint_pdf(std::clamp((x - c1 * v) / c0, box->x0.lo, box->x0.hi),
                         std::clamp(v, range.lo, range.hi));
    };
    return std::max(integrate(integrand, range.lo, range.hi, cfg) / c0, 0.0);
}

double pdf_exponential_closed(int n, double x, double rate) {
    require_order(n, 2, "pdf_exponential_closed");
    if (!(rate > 0.0)) {
        throw DomainError("pdf_exponential_closed: rate must be positive");
    }
    const double y = rate * x;
    if (y < 0.0) {
        return 0.0;
    }
    if (n == 2) {
        return rate * y * std::exp(-y);
    }
    const double a2 = fib_double(n - 2);
    const double a1 = fib_double(n - 1);
    const double a0 = fib_double(n);
    return rate / a2 * std::expm1(y * a2 / (a1 * a0)) * std::exp(-y / a1);
}

double pdf_uniform_closed(int n, double x) {
    require_order(n, 2, "pdf_uniform_closed");
    const double a1 = fib_double(n - 1);
    const double a0 = fib_double(n);
    if (x < 0.0 || x > a0 + a1) {
        return 0.0;
    }
    if (x <= a1) {
        return x / (a0 * a1);
    }
    if (x <= a0) {
        return 1.0 / a0;
    }
    return (1.0 - (x - a0) / a1) / a0;
}

double pdf_normal_closed(int n, double x) {
    require_order(n, 2, "pdf_normal_closed");
    const double a1 = fib_double(n - 1);
    const double a0 = fib_double(n);
    const double var = a1 * a1 + a0 * a0;
    return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

double pdf_closed(const FsrvModel& model, int n, double x) {
    const auto form = model.closed_form();
    if (!form) {
        throw DomainError("pdf_closed: no closed form for seeds " + model.seed0().describe() +
                          ", " + model.seed1().describe());
    }
    switch (*form) {
        case ClosedForm::exponential:
            return pdf_exponential_closed(n, x, model.exponential_rate());
        case ClosedForm::uniform:
            return pdf_uniform_closed(n, x);
        case ClosedForm::normal:
            return pdf_normal_closed(n, x);
    }
    return 0.0;
}

Moments moments_xn(const FsrvModel& model, int n) {
    require_order(n, 1, "moments_xn");
    return linear_law_moments(model, fib_double(n - 1), fib_double(n), 0.0);
}

ModePoint mode_exponential(int n) {
    require_order(n, 2, "mode_exponential");
    if (n == 2) {
        return {1.0, std::exp(-1.0)};
    }
    // a_n - a_{n-2} = a_{n-1}, so a_n / (a_n - a_{n-2}) is ratio(n-1, 1).
    const double a2 = fib_double(n - 2);
    const double a1 = fib_double(n - 1);
    const double a0 = fib_double(n);
    const double base = ratio(n - 1, 1);
    const double x_star = a1 * a0 * std::log(base) / a2;
    const double max_density = std::pow(base, -ratio(n - 2, 2)) / a1;
    return {x_star, max_density};
}

std::vector<RatioDiagnostics> ratio_diagnostics(int n_lo, int n_hi) {
    if (n_lo < 3 || n_hi > 90 || n_lo > n_hi) {
        throw DomainError("ratio_diagnostics: requires 3 <= n_lo <= n_hi <= 90, got " +
                          std::to_string(n_lo) + ".." + std::to_string(n_hi));
    }
    std::vector<RatioDiagnostics> rows;
    rows.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) {
        const ModePoint here = mode_exponential(n);
        const ModePoint next = mode_exponential(n + 1);
        RatioDiagnostics row;
        row.n = n;
        row.max_ratio = here.max_density / next.max_density;
        row.mode_ratio = next.x_star / here.x_star;
        // E X_n = a_{n+1} and Var X_n = a_{2n-1} for Exp(1) seeds.
        row.mean_ratio = ratio(n + 1, 1);
        row.var_ratio = ratio(2 * n - 1, 2);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace fsrv
