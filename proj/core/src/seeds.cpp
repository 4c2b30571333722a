// Copyright 2026 The fsrv Authors.
// SPDX-License-Identifier: Apache-2.0

#include "fsrv/seeds.hpp"

#include "fsrv/error.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string_view>

namespace fsrv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_real(std::string_view text, double& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end && !text.empty();
}

}  // namespace

TabulatedPdf::TabulatedPdf(double lo, double hi, std::vector<double> nodes)
    : lo_(lo), hi_(hi), step_(0.0), nodes_(std::move(nodes)) {
    if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
        throw DomainError("TabulatedPdf: requires finite lo < hi");
    }
    if (nodes_.size() < kMinNodes) {
        throw DomainError("TabulatedPdf: needs at least " + std::to_string(kMinNodes) +
                          " nodes, got " + std::to_string(nodes_.size()));
    }
    for (double y : nodes_) {
        if (!std::isfinite(y) || y < 0.0) {
            throw DomainError("TabulatedPdf: density samples must be finite and nonnegative");
        }
    }
    step_ = (hi_ - lo_) / static_cast<double>(nodes_.size() - 1);
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        area += 0.5 * step_ * (nodes_[i] + nodes_[i + 1]);
    }
    if (!(area > 0.0)) {
        throw DomainError("TabulatedPdf: density has zero mass");
    }
    for (double& y : nodes_) {
        y /= area;
    }
    cdf_nodes_.resize(nodes_.size());
    cdf_nodes_[0] = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        cdf_nodes_[i + 1] = cdf_nodes_[i] + 0.5 * step_ * (nodes_[i] + nodes_[i + 1]);
    }
}

double TabulatedPdf::pdf(double x) const {
    if (!(x >= lo_ && x <= hi_)) {
        return 0.0;
    }
    const auto last = nodes_.size() - 2;
    const auto i = std::min(static_cast<std::size_t>((x - lo_) / step_), last);
    const double d = x - (lo_ + step_ * static_cast<double>(i));
    const double slope = (nodes_[i + 1] - nodes_[i]) / step_;
    return std::max(nodes_[i] + slope * d, 0.0);
}

double TabulatedPdf::cdf(double x) const {
    if (x <= lo_) {
        return 0.0;
    }
    if (x >= hi_) {
        return 1.0;
    }
    const auto last = nodes_.size() - 2;
    const auto i = std::min(static_cast<std::size_t>((x - lo_) / step_), last);
    const double d = x - (lo_ + step_ * static_cast<double>(i));
    const double slope = (nodes_[i + 1] - nodes_[i]) / step_;
    return std::clamp(cdf_nodes_[i] + nodes_[i] * d + 0.5 * slope * d * d, 0.0, 1.0);
}

double TabulatedPdf::quantile(double p) const {
    if (p <= 0.0) {
        return lo_;
    }
    if (p >= 1.0) {
        return hi_;
    }
    auto it = std::upper_bound(cdf_nodes_.begin(), cdf_nodes_.end(), p);
    auto i = static_cast<std::size_t>(std::distance(cdf_nodes_.begin(), it));
    i = std::clamp<std::size_t>(i, 1, nodes_.size() - 1) - 1;
    // Solve y_i d + slope d^2 / 2 = r on [0, step].
    const double r = p - cdf_nodes_[i];
    const double y = nodes_[i];
    const double slope = (nodes_[i + 1] - nodes_[i]) / step_;
    double d = 0.0;
    const double disc = y * y + 2.0 * slope * r;
    if (slope == 0.0) {
        d = y > 0.0 ? r / y : 0.0;
    } else {
        const double root = std::sqrt(std::max(disc, 0.0));
        d = (y + root) > 0.0 ? 2.0 * r / (y + root) : 0.0;
    }
    d = std::clamp(d, 0.0, step_);
    return lo_ + step_ * static_cast<double>(i) + d;
}

TabulatedPdf parse_tabulated_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t line_no = 0;
    bool seen_row = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        const auto comma = view.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("tabulated csv line " + std::to_string(line_no) +
                             ": expected two comma-separated columns");
        }
        double x = 0.0;
        double y = 0.0;
        const bool ok = parse_real(view.substr(0, comma), x) &&
                        parse_real(view.substr(comma + 1), y);
        if (!ok) {
            if (!seen_row) {
                seen_row = true;  // header
                continue;
            }
            throw ParseError("tabulated csv line " + std::to_string(line_no) +
                             ": cannot parse '" + std::string(view) + "'");
        }
        seen_row = true;
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() < TabulatedPdf::kMinNodes) {
        throw ParseError("tabulated csv: needs at least " +
                         std::to_string(TabulatedPdf::kMinNodes) + " rows, got " +
                         std::to_string(xs.size()));
    }
    const double lo = xs.front();
    const double hi = xs.back();
    const double step = (hi - lo) / static_cast<double>(xs.size() - 1);
    if (!(step > 0.0)) {
        throw ParseError("tabulated csv: x column must be increasing");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expected = lo + step * static_cast<double>(i);
        if (std::abs(xs[i] - expected) > 1e-6 * step) {
            throw ParseError("tabulated csv: x column is not uniformly spaced at row " +
                             std::to_string(i + 1));
        }
    }
    return TabulatedPdf(lo, hi, std::move(ys));
}

TabulatedPdf load_tabulated_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open tabulated density file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tabulated_csv(buffer.str());
}

SeedDistribution SeedDistribution::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw DomainError("exponential seed: rate must be positive and finite");
    }
    return SeedDistribution(ExponentialSeed{rate});
}

SeedDistribution SeedDistribution::uniform_unit() { return SeedDistribution(UniformUnitSeed{}); }

SeedDistribution SeedDistribution::standard_normal() {
    return SeedDistribution(StandardNormalSeed{});
}

SeedDistribution SeedDistribution::tabulated(TabulatedPdf table) {
    return SeedDistribution(std::move(table));
}

double SeedDistribution::pdf(double x) const {
    return std::visit(
        Overloaded{
            [x](const ExponentialSeed& e) { return x < 0.0 ? 0.0 : e.rate * std::exp(-e.rate * x); },
            [x](const UniformUnitSeed&) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; },
            [x](const StandardNormalSeed&) {
                return std::exp(-0.5 * x * x) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
            },
            [x](const TabulatedPdf& t) { return t.pdf(x); },
        },
        kind_);
}

double SeedDistribution::cdf(double x) const {
    return std::visit(
        Overloaded{
            [x](const ExponentialSeed& e) { return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x); },
            [x](const UniformUnitSeed&) { return std::clamp(x, 0.0, 1.0); },
            [x](const StandardNormalSeed&) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); },
            [x](const TabulatedPdf& t) { return t.cdf(x); },
        },
        kind_);
}

Moments SeedDistribution::moments() const {
    return std::visit(
        Overloaded{
            [](const ExponentialSeed& e) { return Moments{1.0 / e.rate, 1.0 / (e.rate * e.rate)}; },
            [](const UniformUnitSeed&) { return Moments{0.5, 1.0 / 12.0}; },
            [](const StandardNormalSeed&) { return Moments{0.0, 1.0}; },
            [](const TabulatedPdf& t) {
                std::vector<double> cuts;
                for (std::size_t i = 0; i < t.nodes().size(); ++i) {
                    cuts.push_back(t.lo() + t.step() * static_cast<double>(i));
                }
                const auto pdf = [&t](double x) { return t.pdf(x); };
                const double mean = integrate_piecewise(
                    [&](double x) { return x * pdf(x); }, t.lo(), t.hi(), cuts);
                const double var = integrate_piecewise(
                    [&](double x) { return (x - mean) * (x - mean) * pdf(x); }, t.lo(), t.hi(),
                    cuts);
                return Moments{mean, var};
            },
        },
        kind_);
}

double SeedDistribution::sample(RngStream& stream) const {
    return std::visit(
        Overloaded{
            [&stream](const ExponentialSeed& e) { return -std::log1p(-stream.uniform()) / e.rate; },
            [&stream](const UniformUnitSeed&) { return stream.uniform(); },
            [&stream](const StandardNormalSeed&) { return stream.normal(); },
            [&stream](const TabulatedPdf& t) { return t.quantile(stream.uniform()); },
        },
        kind_);
}

Interval SeedDistribution::support() const {
    return std::visit(Overloaded{
                          [](const ExponentialSeed&) { return Interval{0.0, kInf}; },
                          [](const UniformUnitSeed&) { return Interval{0.0, 1.0}; },
                          [](const StandardNormalSeed&) { return Interval{-kInf, kInf}; },
                          [](const TabulatedPdf& t) { return Interval{t.lo(), t.hi()}; },
                      },
                      kind_);
}

Interval SeedDistribution::effective_support(double tail_mass) const {
    if (!(tail_mass > 0.0 && tail_mass < 1.0)) {
        throw DomainError("effective_support: tail mass must lie in (0, 1)");
    }
    return std::visit(
        Overloaded{
            [tail_mass](const ExponentialSeed& e) {
                return Interval{0.0, -std::log(tail_mass) / e.rate};
            },
            [](const UniformUnitSeed&) { return Interval{0.0, 1.0}; },
            [tail_mass](const StandardNormalSeed&) {
                const double z = std::numbers::sqrt2 * boost::math::erfc_inv(tail_mass);
                return Interval{-z, z};
            },
            [](const TabulatedPdf& t) { return Interval{t.lo(), t.hi()}; },
        },
        kind_);
}

std::vector<double> SeedDistribution::breakpoints() const {
    return std::visit(Overloaded{
                          [](const ExponentialSeed& e) { return std::vector<double>{0.0, 1.0 / e.rate}; },
                          [](const UniformUnitSeed&) { return std::vector<double>{0.0, 0.5, 1.0}; },
                          [](const StandardNormalSeed&) { return std::vector<double>{0.0}; },
                          [](const TabulatedPdf& t) {
                              std::vector<double> cuts;
                              for (std::size_t i = 0; i < t.nodes().size(); ++i) {
                                  cuts.push_back(t.lo() + t.step() * static_cast<double>(i));
                              }
                              return cuts;
                          },
                      },
                      kind_);
}

Density1D SeedDistribution::density(const QuadratureConfig& cfg) const {
    return Density1D{[self = *this](double x) { return self.pdf(x); },
                     effective_support(cfg.tail_mass_cutoff), breakpoints()};
}

std::string SeedDistribution::describe() const {
    return std::visit(Overloaded{
                          [](const ExponentialSeed& e) {
                              std::ostringstream os;
                              os.precision(17);
                              os << "exp:" << e.rate;
                              return os.str();
                          },
                          [](const UniformUnitSeed&) { return std::string("unif01"); },
                          [](const StandardNormalSeed&) { return std::string("normal01"); },
                          [](const TabulatedPdf&) { return std::string("table"); },
                      },
                      kind_);
}

}  // namespace fsrv
