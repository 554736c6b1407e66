#include "fas/rank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fas {

namespace {

constexpr double kTau1 = 1e-10;
constexpr double kTau2 = 1e-15;

// Region-3 eigenvalues may be exactly 0 after clamping; their log plot value
// is floored far below tau2 so the floor can never move a region boundary.
constexpr double kLogFloor = 1e-30;

struct Normalizer {
    double lo, range;
    double operator()(double v) const { return range > 0.0 ? (v - lo) / range : 0.5; }
};

Normalizer make_normalizer(double lo, double hi) { return {lo, hi - lo}; }

} // namespace

SpectrumPartition partition_spectrum(std::span<const double> lambda) {
    for (std::size_t i = 1; i < lambda.size(); ++i) {
        if (lambda[i] > lambda[i - 1]) {
            throw std::domain_error("partition_spectrum: input not sorted descending");
        }
    }
    SpectrumPartition part;
    part.size = lambda.size();
    part.r1_end = std::size_t(std::ranges::partition_point(
                      lambda, [](double v) { return v > kTau1; }) -
                  lambda.begin());
    part.r2_end = std::size_t(std::ranges::partition_point(
                      lambda, [](double v) { return v > kTau2; }) -
                  lambda.begin());
    return part;
}

std::optional<std::size_t> knee_of_segment(std::span<const KneePoint> points) {
    if (points.size() < 3) return std::nullopt;

    auto [x_min, x_max] = std::ranges::minmax(points, {}, &KneePoint::index);
    auto [y_min, y_max] = std::ranges::minmax(points, {}, &KneePoint::log10_value);
    const Normalizer nx = make_normalizer(x_min.index, x_max.index);
    const Normalizer ny = make_normalizer(y_min.log10_value, y_max.log10_value);

    std::optional<std::size_t> best;
    double best_cos = 0.0;
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        const double xi = nx(points[i].index), yi = ny(points[i].log10_value);
        const double v1x = nx(points[i - 1].index) - xi;
        const double v1y = ny(points[i - 1].log10_value) - yi;
        const double v2x = nx(points[i + 1].index) - xi;
        const double v2y = ny(points[i + 1].log10_value) - yi;
        const double n1 = std::hypot(v1x, v1y);
        const double n2 = std::hypot(v2x, v2y);
        if (n1 == 0.0 || n2 == 0.0) continue;  // coincident normalized points
        const double c = (v1x * v2x + v1y * v2y) / (n1 * n2);
        if (!best || c > best_cos) {
            best = i;
            best_cos = c;
        }
    }
    return best;
}

double theoretical_rank(double w) {
    if (!(w >= 0.0)) throw std::domain_error("theoretical_rank: w must be >= 0");
    return 2.0 * w + 1.0;
}

int theoretical_rank_rounded(double w) {
    return static_cast<int>(std::floor(theoretical_rank(w) + 0.5));
}

double entropy_rank(std::span<const double> lambda) {
    double total = 0.0;
    for (double v : lambda) total += v;
    if (!(total > 0.0)) throw std::domain_error("entropy_rank: spectrum sums to zero");
    double entropy = 0.0;
    for (double v : lambda) {
        if (v <= 0.0) continue;
        const double p = v / total;
        entropy -= p * std::log(p);
    }
    return std::exp(entropy);
}

RankReport effective_ranks(const CorrelationSpectrum& spec) {
    const auto& values = spec.eigenvalues();
    const std::span<const double> lambda(values.data(), std::size_t(values.size()));
    const SpectrumPartition part = partition_spectrum(lambda);

    auto knee_in = [&](std::size_t begin, std::size_t end) -> std::optional<int> {
        if (end - begin < 3) return std::nullopt;
        std::vector<KneePoint> pts;
        pts.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            pts.push_back({static_cast<double>(i + 1),
                           std::log10(std::max(lambda[i], kLogFloor))});
        }
        const auto local = knee_of_segment(pts);
        if (!local) return std::nullopt;
        return static_cast<int>(begin + *local + 1);  // back to global 1-based
    };

    RankReport report;
    report.n_eff1 = knee_in(0, part.r1_end);
    report.n_eff2 = knee_in(part.r1_end, part.r2_end);
    report.n_eff3 = knee_in(part.r2_end, part.size);
    report.theoretical = theoretical_rank(spec.geometry().width);
    report.theoretical_rounded = theoretical_rank_rounded(spec.geometry().width);
    report.entropy_rank = entropy_rank(lambda);
    if (report.n_eff1) report.energy_at_n_eff1 = energy_ratio(spec, *report.n_eff1);
    return report;
}

} // namespace fas
