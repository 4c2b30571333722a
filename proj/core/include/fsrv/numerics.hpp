// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fsrv {

using RealFn = std::function<double(double)>;

/// Closed interval [lo, hi]; empty when lo > hi. Endpoints may be infinite.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const noexcept { return !(lo <= hi); }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    double width() const noexcept { return empty() ? 0.0 : hi - lo; }
    bool finite() const noexcept;
};

Interval intersect(const Interval& a, const Interval& b) noexcept;

struct QuadratureConfig {
    double abs_tol = 1e-9;
    int max_depth = 60;
    /// Integrand evaluations allowed per integrate() call. Bounds the work when
    /// abs_tol is below what double rounding can resolve.
    std::size_t max_evaluations = 2'000'000;
    /// Probability mass allowed outside a truncated infinite support.
    double tail_mass_cutoff = 1e-12;

    /// Throws DomainError unless abs_tol > 0, tail_mass_cutoff in (0, 1), max_depth >= 1.
    void validate() const;

    /// Defaults, with abs_tol taken from FSRV_QUAD_TOL when that variable is set.
    static QuadratureConfig from_environment();
};

/// Adaptive Simpson on [lo, hi] with absolute error target cfg.abs_tol.
///
/// Throws NonConvergenceError (carrying the estimate) when a panel needs
/// more than cfg.max_depth bisections or the evaluation budget runs out. Integrands with jumps must be split
/// at the jump by the caller, see integrate_piecewise.
double integrate(const RealFn& f, double lo, double hi, const QuadratureConfig& cfg = {});

/// integrate() over [lo, hi] split at every breakpoint strictly inside it.
/// The tolerance budget is shared evenly across the pieces.
double integrate_piecewise(const RealFn& f, double lo, double hi,
                           std::span<const double> breakpoints,
                           const QuadratureConfig& cfg = {});

/// A univariate density together with what quadrature needs to know about it:
/// a finite support carrying all but a negligible tail of the mass, and the
/// points inside it where the density has a kink or jump (or where the mass
/// concentrates, so the first Simpson panels see it).
struct Density1D {
    RealFn pdf;
    Interval support;
    std::vector<double> breakpoints;
};

/// Density at x of c0 V0 + c1 V1 for independent V0 ~ f0, V1 ~ f1, c0, c1 > 0:
///
///   (1 / (c0 c1)) * integral f0((x - t) / c0) f1(t / c1) dt
///
/// evaluated over the intersection of both supports after the change of
/// variable t = c1 v. Returns 0 when that intersection is empty.
double scaled_convolution(const Density1D& f0, const Density1D& f1, double c0, double c1,
                          double x, const QuadratureConfig& cfg = {});

struct ArgMax {
    double x_star = 0.0;
    double f_star = 0.0;
};

/// Maximizer of a unimodal f on [lo, hi].
///
/// Golden-section search brackets the peak; a bisection on the sign of a
/// central difference then refines it to tol. When the maximum is attained on
/// a flat stretch the midpoint of that stretch is returned.
ArgMax argmax_scalar(const RealFn& f, double lo, double hi, double tol);

/// A density sampled on a grid, with its cdf at the same points and the
/// defect |integral over the full support - 1|.
struct DensityCurve {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> cdf;
    Interval support;
    double norm_defect = 0.0;
};

/// Sample `law` on the increasing grid `xs`. The cdf column is accumulated
/// panel by panel from support.lo.
DensityCurve tabulate(const Density1D& law, std::span<const double> xs,
                      const QuadratureConfig& cfg = {});

/// `points` equally spaced values from lo to hi inclusive (points >= 2).
std::vector<double> linspace(double lo, double hi, int points);

}  // namespace fsrv
