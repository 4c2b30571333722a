// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fsrv/fib.hpp"
#include "fsrv/marginal.hpp"
#include "fsrv/numerics.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fsrv {

/// Law of the pair (X_n, X_{n+k}).
///
/// The map (x0, x1) -> (y0, y1) = (a_{n-1} x0 + a_n x1, a_{n+k-1} x0 + a_{n+k} x1)
/// has determinant a_{n-1} a_{n+k} - a_n a_{n+k-1} = (-1)^n a_k, so the pair
/// has density f_0(x0) f_1(x1) / a_k at the preimage.
class JointLaw {
public:
    /// Requires n >= 2, k >= 1, n + k <= 185. Verifies the determinant
    /// against d'Ocagne's identity.
    static JointLaw of(int n, int k);

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }

    /// (a_{n-1}, a_n; a_{n+k-1}, a_{n+k}).
    const FibInt& a_prev() const noexcept { return a_prev_; }
    const FibInt& a_n() const noexcept { return a_n_; }
    const FibInt& a_nk_prev() const noexcept { return a_nk_prev_; }
    const FibInt& a_nk() const noexcept { return a_nk_; }

    /// (-1)^n a_k, exact.
    const SignedFibInt& jacobian() const noexcept { return jacobian_; }

    /// Seed coordinates (x0, x1) mapped to (y0, y1).
    std::pair<double, double> to_seeds(double y0, double y1) const;

    /// y1-interval on which the preimage of (y0, y1) lies in box0 x box1.
    std::optional<Interval> y1_range(double y0, const Interval& box0, const Interval& box1) const;

private:
    JointLaw() = default;

    int n_ = 2;
    int k_ = 1;
    FibInt a_prev_, a_n_, a_nk_prev_, a_nk_;
    SignedFibInt jacobian_;
    double c_prev_ = 0, c_n_ = 0, c_nk_prev_ = 0, c_nk_ = 0, det_ = 0, abs_det_ = 0;
};

/// Joint density of (X_n, X_{n+k}) at (y0, y1) for independent seeds.
double joint_pdf(const JointLaw& law, const FsrvModel& model, double y0, double y1);

/// Values of y1 with positive joint density at y0, from the true seed
/// supports; nullopt when there are none.
std::optional<Interval> joint_support(const JointLaw& law, const FsrvModel& model, double y0);

/// integral joint_pdf(y0, y1) dy1, which is the density of X_n at y0.
double joint_marginal(const JointLaw& law, const FsrvModel& model, double y0,
                      const QuadratureConfig& cfg = {});

/// Iterated quadrature of the joint density over its support; should be 1.
double joint_normalization_check(const JointLaw& law, const FsrvModel& model,
                                 const QuadratureConfig& cfg = {});

inline constexpr double kDefaultDensityFloor = 1e-12;

/// g(x) = E[X_{n+k} | X_n = x] = integral y f(x, y) dy / f_{X_n}(x).
/// OutsideSupportError when f_{X_n}(x) < density_floor.
double predict(const JointLaw& law, const FsrvModel& model, double x,
               const QuadratureConfig& cfg = {}, double density_floor = kDefaultDensityFloor);

/// As predict, but nullopt instead of throwing below the floor.
std::optional<double> try_predict(const JointLaw& law, const FsrvModel& model, double x,
                                  const QuadratureConfig& cfg = {},
                                  double density_floor = kDefaultDensityFloor);

/// Closed predictor of X_7 from X_4 for iid Exp(1) seeds:
/// g(x) = 4x - 2 - x / (3 (e^{-x/6} - 1)), with g(0) = 0 by continuity.
double predict_exponential_n4_k3_closed(double x);

/// E[g(X_n)], which equals E X_{n+k} for an unbiased predictor.
double predictor_mean(const JointLaw& law, const FsrvModel& model,
                      const QuadratureConfig& cfg = {}, double density_floor = kDefaultDensityFloor);

enum class PredictionMethod { quadrature, closed_form };

struct PredictionCurve {
    std::vector<double> xs;
    std::vector<double> g_values;
    PredictionMethod method = PredictionMethod::quadrature;
    /// Grid points dropped because the conditioning density was below the floor.
    std::size_t skipped = 0;
};

PredictionCurve prediction_curve(const JointLaw& law, const FsrvModel& model,
                                 std::span<const double> xs, const QuadratureConfig& cfg = {},
                                 double density_floor = kDefaultDensityFloor);

}  // namespace fsrv
