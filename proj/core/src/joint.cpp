// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/joint.hpp"

#include "fsrv/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fsrv {

namespace {

// Values of y with lo <= alpha + beta y <= hi (beta != 0).
Interval solve_band(double alpha, double beta, double lo, double hi) {
    const double p = (lo - alpha) / beta;
    const double q = (hi - alpha) / beta;
    return beta > 0.0 ? Interval{p, q} : Interval{q, p};
}

struct Boxes {
    Interval x0;
    Interval x1;
};

Boxes effective_boxes(const FsrvModel& model, const QuadratureConfig& cfg) {
    return {model.seed0().effective_support(cfg.tail_mass_cutoff),
            model.seed1().effective_support(cfg.tail_mass_cutoff)};
}

// Integrates weight(y1) * joint(y0, y1) over the y1-support at y0. Seed
// coordinates are clamped into the box so endpoint rounding cannot step
// across a jump of a seed density.
template <class Weight>
double integrate_slice(const JointLaw& law, const FsrvModel& model, double y0, const Boxes& box,
                       Weight weight, const QuadratureConfig& cfg) {
    const auto range = law.y1_range(y0, box.x0, box.x1);
    if (!range || range->width() == 0.0) {
        return 0.0;
    }
    const SeedDistribution& s0 = model.seed0();
    const SeedDistribution& s1 = model.seed1();
    const double inv_ak = 1.0 / std::abs(law.jacobian().convert_to<double>());
    const auto integrand = [&](double y1) {
        auto [x0, x1] = law.to_seeds(y0, y1);
        x0 = std::clamp(x0, box.x0.lo, box.x0.hi);
        x1 = std::clamp(x1, box.x1.lo, box.x1.hi);
        return weight(y1) * s0.pdf(x0) * s1.pdf(x1) * inv_ak;
    };
    // Seed kinks pulled back onto the slice.
    std::vector<double> cuts;
    const auto [a0, b0] = law.to_seeds(y0, 0.0);
    const auto [a1, b1] = law.to_seeds(y0, 1.0);
    const double slope0 = a1 - a0;
    const double slope1 = b1 - b0;
    for (double k : s0.breakpoints()) {
        cuts.push_back((k - a0) / slope0);
    }
    for (double k : s1.breakpoints()) {
        cuts.push_back((k - b0) / slope1);
    }
    return integrate_piecewise(integrand, range->lo, range->hi, cuts, cfg);
}

}  // namespace

JointLaw JointLaw::of(int n, int k) {
    if (n < 2) {
        throw DomainError("JointLaw: requires n >= 2, got " + std::to_string(n));
    }
    if (k < 1) {
        throw DomainError("JointLaw: requires k >= 1, got " + std::to_string(k));
    }
    if (n + k > kMaxFibIndex - 1) {
        throw OverflowError("JointLaw: n + k must not exceed " + std::to_string(kMaxFibIndex - 1));
    }
    JointLaw law;
    law.n_ = n;
    law.k_ = k;
    law.a_prev_ = fib(n - 1);
    law.a_n_ = fib(n);
    law.a_nk_prev_ = fib(n + k - 1);
    law.a_nk_ = fib(n + k);
    law.jacobian_ = SignedFibInt(law.a_prev_) * SignedFibInt(law.a_nk_) -
                    SignedFibInt(law.a_n_) * SignedFibInt(law.a_nk_prev_);
    // d'Ocagne with m = n + k - 1, index n - 1 gives (-1)^{n-1} a_k for the
    // negated determinant.
    if (law.jacobian_ != -docagne(n + k - 1, n - 1)) {
        throw std::logic_error("JointLaw: determinant disagrees with d'Ocagne's identity");
    }
    SignedFibInt expected = SignedFibInt(fib(k));
    if (n % 2 == 1) {
        expected = -expected;
    }
    if (law.jacobian_ != expected) {
        throw std::logic_error("JointLaw: determinant is not (-1)^n a_k");
    }
    law.c_prev_ = law.a_prev_.convert_to<double>();
    law.c_n_ = law.a_n_.convert_to<double>();
    law.c_nk_prev_ = law.a_nk_prev_.convert_to<double>();
    law.c_nk_ = law.a_nk_.convert_to<double>();
    law.det_ = law.jacobian_.convert_to<double>();
    law.abs_det_ = std::abs(law.det_);
    return law;
}

std::pair<double, double> JointLaw::to_seeds(double y0, double y1) const {
    return {(c_nk_ * y0 - c_n_ * y1) / det_, (c_prev_ * y1 - c_nk_prev_ * y0) / det_};
}

std::optional<Interval> JointLaw::y1_range(double y0, const Interval& box0,
                                           const Interval& box1) const {
    const Interval from0 = solve_band(c_nk_ * y0 / det_, -c_n_ / det_, box0.lo, box0.hi);
    const Interval from1 = solve_band(-c_nk_prev_ * y0 / det_, c_prev_ / det_, box1.lo, box1.hi);
    const Interval range = intersect(from0, from1);
    if (range.empty()) {
        return std::nullopt;
    }
    return range;
}

double joint_pdf(const JointLaw& law, const FsrvModel& model, double y0, double y1) {
    const auto [x0, x1] = law.to_seeds(y0, y1);
    const double p0 = model.seed0().pdf(x0);
    if (p0 == 0.0) {
        return 0.0;
    }
    return p0 * model.seed1().pdf(x1) / std::abs(law.jacobian().convert_to<double>());
}

std::optional<Interval> joint_support(const JointLaw& law, const FsrvModel& model, double y0) {
    return law.y1_range(y0, model.seed0().support(), model.seed1().support());
}

double joint_marginal(const JointLaw& law, const FsrvModel& model, double y0,
                      const QuadratureConfig& cfg) {
    return integrate_slice(law, model, y0, effective_boxes(model, cfg),
                           [](double) { return 1.0; }, cfg);
}

double joint_normalization_check(const JointLaw& law, const FsrvModel& model,
                                 const QuadratureConfig& cfg) {
    const Boxes box = effective_boxes(model, cfg);
    const Density1D xn = marginal_density(model, law.n(), cfg);
    const auto slice = [&](double y0) {
        return integrate_slice(law, model, y0, box, [](double) { return 1.0; }, cfg);
    };
    return integrate_piecewise(slice, xn.support.lo, xn.support.hi, xn.breakpoints, cfg);
}

std::optional<double> try_predict(const JointLaw& law, const FsrvModel& model, double x,
                                  const QuadratureConfig& cfg, double density_floor) {
    const double fx = pdf_numeric(model, law.n(), x, cfg);
    if (!(fx >= density_floor)) {
        return std::nullopt;
    }
    const double numerator = integrate_slice(law, model, x, effective_boxes(model, cfg),
                                             [](double y1) { return y1; }, cfg);
    return numerator / fx;
}

double predict(const JointLaw& law, const FsrvModel& model, double x,
               const QuadratureConfig& cfg, double density_floor) {
    const auto g = try_predict(law, model, x, cfg, density_floor);
    if (!g) {
        throw OutsideSupportError("predict: x = " + std::to_string(x) +
                                  " is outside the effective support of X_" +
                                  std::to_string(law.n()) + " (density below floor)");
    }
    return *g;
}

double predict_exponential_n4_k3_closed(double x) {
    if (x < 0.0) {
        throw DomainError("predict_exponential_n4_k3_closed: requires x >= 0");
    }
    if (x < 1e-4) {
        // Series about the removable singularity: 25x/6 + x^2/216 + O(x^4).
        return 25.0 * x / 6.0 + x * x / 216.0;
    }
    return 4.0 * x - 2.0 - x / (3.0 * std::expm1(-x / 6.0));
}

double predictor_mean(const JointLaw& law, const FsrvModel& model, const QuadratureConfig& cfg,
                      double density_floor) {
    const Density1D xn = marginal_density(model, law.n(), cfg);
    const auto integrand = [&](double x) {
        const auto g = try_predict(law, model, x, cfg, density_floor);
        return g ? *g * xn.pdf(x) : 0.0;
    };
    return integrate_piecewise(integrand, xn.support.lo, xn.support.hi, xn.breakpoints, cfg);
}

PredictionCurve prediction_curve(const JointLaw& law, const FsrvModel& model,
                                 std::span<const double> xs, const QuadratureConfig& cfg,
                                 double density_floor) {
    PredictionCurve curve;
    curve.method = PredictionMethod::quadrature;
    for (double x : xs) {
        if (const auto g = try_predict(law, model, x, cfg, density_floor)) {
            curve.xs.push_back(x);
            curve.g_values.push_back(*g);
        } else {
            ++curve.skipped;
        }
    }
    return curve;
}

}  // namespace fsrv
