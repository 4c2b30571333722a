// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/numerics.hpp"

#include "fsrv/error.hpp"
#include "fsrv/fib.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace fsrv {

bool Interval::finite() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

Interval intersect(const Interval& a, const Interval& b) noexcept {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
        throw DomainError("QuadratureConfig: abs_tol must be positive and finite");
    }
    if (!(tail_mass_cutoff > 0.0 && tail_mass_cutoff < 1.0)) {
        throw DomainError("QuadratureConfig: tail_mass_cutoff must lie in (0, 1)");
    }
    if (max_depth < 1) {
        throw DomainError("QuadratureConfig: max_depth must be at least 1");
    }
    if (max_evaluations < 1) {
        throw DomainError("QuadratureConfig: max_evaluations must be at least 1");
    }
}

QuadratureConfig QuadratureConfig::from_environment() {
    QuadratureConfig cfg;
    if (const char* raw = std::getenv("FSRV_QUAD_TOL"); raw != nullptr && *raw != '\0') {
        char* end = nullptr;
        const double tol = std::strtod(raw, &end);
        if (end == raw || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
            throw DomainError(std::string("FSRV_QUAD_TOL: not a positive number: ") + raw);
        }
        cfg.abs_tol = tol;
    }
    return cfg;
}

namespace {

// Panels are never accepted above this depth, so at least 2^kMinDepth of
// them sample every integral.
constexpr int kMinDepth = 3;

struct SimpsonState {
    const RealFn& f;
    int max_depth;
    std::size_t budget;
    std::size_t evaluations = 0;
    bool capped = false;
};

double simpson_panel(SimpsonState& st, double a, double fa, double m, double fm, double b,
                     double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    st.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;

    const bool collapsed = !(a < lm && lm < m && m < rm && rm < b);
    if (collapsed || (depth >= kMinDepth && std::abs(delta) <= 15.0 * eps)) {
        return left + right + delta / 15.0;
    }
    if (depth >= st.max_depth || st.evaluations >= st.budget) {
        st.capped = true;
        return left + right + delta / 15.0;
    }
    return simpson_panel(st, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1) +
           simpson_panel(st, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1);
}

}  // namespace

double integrate(const RealFn& f, double lo, double hi, const QuadratureConfig& cfg) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("integrate: endpoints must be finite");
    }
    if (lo > hi) {
        throw DomainError("integrate: requires lo <= hi");
    }
    if (lo == hi) {
        return 0.0;
    }
    SimpsonState st{f, cfg.max_depth, cfg.max_evaluations};
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo);
    const double fm = f(m);
    const double fb = f(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    const double value = simpson_panel(st, lo, fa, m, fm, hi, fb, whole, cfg.abs_tol, 0);
    if (st.capped) {
        throw NonConvergenceError("integrate: no convergence within depth " +
                                      std::to_string(cfg.max_depth) + " and " +
                                      std::to_string(cfg.max_evaluations) + " evaluations on [" +
                                      std::to_string(lo) + ", " + std::to_string(hi) + "]",
                                  value);
    }
    return value;
}

double integrate_piecewise(const RealFn& f, double lo, double hi,
                           std::span<const double> breakpoints, const QuadratureConfig& cfg) {
    if (lo >= hi) {
        return integrate(f, lo, hi, cfg);
    }
    std::vector<double> cuts{lo};
    for (double b : breakpoints) {
        if (b > lo && b < hi) {
            cuts.push_back(b);
        }
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadratureConfig piece_cfg = cfg;
    piece_cfg.abs_tol = cfg.abs_tol / static_cast<double>(cuts.size() - 1);
    double total = 0.0;
    double partial = 0.0;
    bool capped = false;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        try {
            total += integrate(f, cuts[i], cuts[i + 1], piece_cfg);
        } catch (const NonConvergenceError& e) {
            capped = true;
            partial = e.partial_estimate();
            total += partial;
        }
    }
    if (capped) {
        throw NonConvergenceError("integrate_piecewise: a panel did not converge", total);
    }
    return total;
}

double scaled_convolution(const Density1D& f0, const Density1D& f1, double c0, double c1,
                          double x, const QuadratureConfig& cfg) {
    if (!(c0 > 0.0) || !(c1 > 0.0)) {
        throw DomainError("scaled_convolution: coefficients must be positive");
    }
    // v is the value of V1; V0 = (x - c1 v) / c0 must land in support(f0).
    const Interval from_f0{(x - c0 * f0.support.hi) / c1, (x - c0 * f0.support.lo) / c1};
    const Interval range = intersect(f1.support, from_f0);
    if (range.empty() || range.width() == 0.0) {
        return 0.0;
    }
    std::vector<double> cuts = f1.breakpoints;
    cuts.reserve(cuts.size() + f0.breakpoints.size());
    for (double k : f0.breakpoints) {
        cuts.push_back((x - c0 * k) / c1);
    }
    // Clamping only absorbs rounding at the ends of the intersected range,
    // where a jump in either density would otherwise be sampled on the wrong side.
    const auto integrand = [&](double v) {
        const double p1 = f1.pdf(std::clamp(v, range.lo, range.hi));
        if (p1 == 0.0) {
            return 0.0;
        }
        return p1 * f0.pdf(std::clamp((x - c1 * v) / c0, f0.support.lo, f0.support.hi));
    };
    const double value = integrate_piecewise(integrand, range.lo, range.hi, cuts, cfg) / c0;
    return std::max(value, 0.0);
}

ArgMax argmax_scalar(const RealFn& f, double lo, double hi, double tol) {
    if (!(lo < hi)) {
        throw DomainError("argmax_scalar: requires lo < hi");
    }
    if (!(tol > 0.0)) {
        throw DomainError("argmax_scalar: tol must be positive");
    }
    const auto eval = [&](double x) {
        const double y = f(x);
        return std::isnan(y) ? -std::numeric_limits<double>::infinity() : y;
    };

    // Golden-section phase. Stop while function differences still dominate
    // rounding; the slope phase below takes over from there.
    const double inv_phi = 1.0 / kPhi;
    const double coarse = std::max(tol, 1e-4 * (hi - lo));
    double a = lo;
    double b = hi;
    double c = b - (b - a) * inv_phi;
    double d = a + (b - a) * inv_phi;
    double fc = eval(c);
    double fd = eval(d);
    for (int iter = 0; iter < 200 && (b - a) > coarse; ++iter) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = eval(d);
        } else if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = eval(c);
        } else {
            a = c;
            b = d;
            c = b - (b - a) * inv_phi;
            d = a + (b - a) * inv_phi;
            fc = eval(c);
            fd = eval(d);
        }
    }

    // Slope phase: bisection on sign(f(x + h) - f(x - h)).
    const double h = std::max(1e-7 * (hi - lo),
                              64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max({std::abs(a), std::abs(b), 1.0}));
    const auto slope = [&](double x) {
        return eval(std::min(x + h, hi)) - eval(std::max(x - h, lo));
    };
    double x0 = 0.5 * (a + b);
    if (slope(a) > 0.0 && slope(b) < 0.0) {
        double l = a;
        double r = b;
        for (int iter = 0; iter < 200 && (r - l) > 0.25 * tol; ++iter) {
            const double m = 0.5 * (l + r);
            const double s = slope(m);
            if (s > 0.0) {
                l = m;
            } else if (s < 0.0) {
                r = m;
            } else {
                l = r = m;
            }
        }
        x0 = 0.5 * (l + r);
    }

    // Superlevel set {f >= f0 - delta} around x0; its midpoint is the answer.
    // On a plateau this is the middle of the flat stretch, on a smooth peak
    // it is symmetric about the maximizer.
    const double f0 = eval(x0);
    const double delta = 1e-12 * std::max(std::abs(f0), std::numeric_limits<double>::min());
    const auto high = [&](double x) { return eval(x) >= f0 - delta; };
    const auto edge = [&](double inside, double outside) {
        if (high(outside)) {
            return outside;
        }
        for (int iter = 0; iter < 200 && std::abs(outside - inside) > 0.25 * tol; ++iter) {
            const double m = 0.5 * (inside + outside);
            (high(m) ? inside : outside) = m;
        }
        return inside;
    };
    const double left = edge(x0, lo);
    const double right = edge(x0, hi);
    const double x_star = 0.5 * (left + right);
    return {x_star, f(x_star)};
}

DensityCurve tabulate(const Density1D& law, std::span<const double> xs,
                      const QuadratureConfig& cfg) {
    if (!std::is_sorted(xs.begin(), xs.end())) {
        throw DomainError("tabulate: grid must be increasing");
    }
    DensityCurve curve;
    curve.xs.assign(xs.begin(), xs.end());
    curve.support = law.support;
    curve.ys.reserve(xs.size());
    curve.cdf.reserve(xs.size());

    const double total =
        integrate_piecewise(law.pdf, law.support.lo, law.support.hi, law.breakpoints, cfg);
    curve.norm_defect = std::abs(total - 1.0);

    double acc = 0.0;
    double prev = law.support.lo;
    for (double x : xs) {
        curve.ys.push_back(std::max(law.pdf(x), 0.0));
        const double upto = std::clamp(x, law.support.lo, law.support.hi);
        if (upto > prev) {
            acc += integrate_piecewise(law.pdf, prev, upto, law.breakpoints, cfg);
            prev = upto;
        }
        curve.cdf.push_back(std::clamp(acc, 0.0, 1.0));
    }
    return curve;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2) {
        throw DomainError("linspace: needs at least 2 points");
    }
    std::vector<double> xs(static_cast<std::size_t>(points));
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
    }
    xs.back() = hi;
    return xs;
}

}  // namespace fsrv
