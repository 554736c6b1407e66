#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fas/correlation.hpp"
#include "fas/rank.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

using fas::build_correlation;
using fas::effective_ranks;
using fas::entropy_rank;
using fas::KneePoint;
using fas::knee_of_segment;
using fas::partition_spectrum;
using fas::RankReport;
using fas::SpectrumPartition;
using fas::theoretical_rank;
using fas::theoretical_rank_rounded;

namespace {

// Independent re-derivation of the sharpest-turn rule: normalize both axes,
// scan every interior cosine, keep the first maximum. Used to cross-check
// the library on synthetic inputs.
std::optional<std::size_t> brute_knee(const std::vector<KneePoint>& pts) {
    if (pts.size() < 3) return std::nullopt;
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& p : pts) {
        x_lo = std::min(x_lo, p.index);
        x_hi = std::max(x_hi, p.index);
        y_lo = std::min(y_lo, p.log10_value);
        y_hi = std::max(y_hi, p.log10_value);
    }
    auto nx = [&](double v) { return x_hi > x_lo ? (v - x_lo) / (x_hi - x_lo) : 0.5; };
    auto ny = [&](double v) { return y_hi > y_lo ? (v - y_lo) / (y_hi - y_lo) : 0.5; };

    std::optional<std::size_t> best;
    double best_cos = -2.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double ax = nx(pts[i - 1].index) - nx(pts[i].index);
        const double ay = ny(pts[i - 1].log10_value) - ny(pts[i].log10_value);
        const double bx = nx(pts[i + 1].index) - nx(pts[i].index);
        const double by = ny(pts[i + 1].log10_value) - ny(pts[i].log10_value);
        const double na = std::sqrt(ax * ax + ay * ay);
        const double nb = std::sqrt(bx * bx + by * by);
        if (na == 0.0 || nb == 0.0) continue;
        const double c = (ax * bx + ay * by) / (na * nb);
        if (c > best_cos) {
            best_cos = c;
            best = i;
        }
    }
    return best;
}

std::vector<double> eigenvalues_of(int n, double w) {
    const auto spec = build_correlation({n, w});
    return {spec.eigenvalues().data(), spec.eigenvalues().data() + n};
}

} // namespace

TEST_CASE("partition thresholds") {
    const std::vector<double> lambda = {1.0, 1e-12, 1e-20};
    const SpectrumPartition p = partition_spectrum(lambda);
    CHECK(p.r1_end == 1);
    CHECK(p.r2_end == 2);
    CHECK(p.size == 3);

    const std::vector<double> clean = eigenvalues_of(2, 0.5);
    const SpectrumPartition q = partition_spectrum(clean);
    CHECK(q.r1_end == 2);
    CHECK(q.r2_end == 2);  // regions 2 and 3 empty

    const std::vector<double> wide = eigenvalues_of(100, 1.0);
    const SpectrumPartition r = partition_spectrum(wide);
    CHECK(r.r1_end > 0);
    CHECK(r.r1_end < 30);
    CHECK(r.r2_end > r.r1_end);
    CHECK(r.size == 100);

    CHECK_THROWS_AS(partition_spectrum(std::vector<double>{0.1, 0.5}), std::domain_error);
}

TEST_CASE("partition boundaries agree with a direct threshold scan") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> log_val(-25.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> lambda(40);
        for (auto& v : lambda) v = std::pow(10.0, log_val(rng));
        std::sort(lambda.rbegin(), lambda.rend());
        const SpectrumPartition p = partition_spectrum(lambda);
        for (std::size_t i = 0; i < lambda.size(); ++i) {
            const int region = lambda[i] > 1e-10 ? 1 : (lambda[i] > 1e-15 ? 2 : 3);
            const int assigned = i < p.r1_end ? 1 : (i < p.r2_end ? 2 : 3);
            CHECK(region == assigned);
        }
    }
}

TEST_CASE("knee basics") {
    // Right angle: corner wins over the collinear flanks.
    const std::vector<KneePoint> corner = {{1, 1.0}, {1, 0.0}, {2, 0.0}};
    CHECK(knee_of_segment(corner) == 1);

    // Exactly collinear: every interior cosine is -1, smallest index wins.
    std::vector<KneePoint> line;
    for (int i = 1; i <= 5; ++i) line.push_back({double(i), -0.3 * i});
    CHECK(knee_of_segment(line) == 1);

    // Fewer than 3 points: undefined.
    CHECK_FALSE(knee_of_segment(std::vector<KneePoint>{{1, 0.0}, {2, -1.0}}).has_value());
    CHECK_FALSE(knee_of_segment(std::vector<KneePoint>{}).has_value());
}

TEST_CASE("knee of a synthetic two-slope spectrum") {
    // Gentle decade-per-10 slope through i = 10, then 2 decades per step:
    // the sharpest turn sits exactly at the slope change.
    std::vector<KneePoint> pts;
    for (int i = 1; i <= 10; ++i) pts.push_back({double(i), -0.1 * i});
    for (int i = 11; i <= 20; ++i) pts.push_back({double(i), -1.0 - 2.0 * (i - 10)});
    const auto knee = knee_of_segment(pts);
    REQUIRE(knee.has_value());
    CHECK(pts[*knee].index == 10.0);
    CHECK(knee == brute_knee(pts));
}

TEST_CASE("knee matches the brute-force scan on random spectra") {
    std::mt19937_64 rng(20250817);
    std::uniform_real_distribution<double> log_val(-20.0, 2.0);
    std::uniform_int_distribution<int> count(3, 40);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = count(rng);
        std::vector<double> ys(n);
        for (auto& y : ys) y = log_val(rng);
        std::sort(ys.rbegin(), ys.rend());
        std::vector<KneePoint> pts;
        for (int i = 0; i < n; ++i) pts.push_back({double(i + 1), ys[i]});

        const auto fast = knee_of_segment(pts);
        const auto brute = brute_knee(pts);
        REQUIRE(fast.has_value());
        CHECK(fast == brute);

        // Determinism: a second run is identical.
        CHECK(knee_of_segment(pts) == fast);
    }
}

TEST_CASE("table of turning points at N = 100") {
    const std::vector<double> widths = {0.5, 1.0, 2.0, 4.0, 6.0, 8.0};
    const std::vector<int> expected_n_eff1 = {2, 3, 5, 9, 13, 17};
    const std::vector<double> expected_energy = {0.9819, 0.9788, 0.9788,
                                                 0.9808, 0.9824, 0.9835};
    for (std::size_t i = 0; i < widths.size(); ++i) {
        const RankReport report = effective_ranks(build_correlation({100, widths[i]}));
        REQUIRE(report.n_eff1.has_value());
        CHECK(*report.n_eff1 == expected_n_eff1[i]);
        REQUIRE(report.energy_at_n_eff1.has_value());
        CHECK(std::abs(*report.energy_at_n_eff1 - expected_energy[i]) <= 0.0005);
        CHECK(*report.energy_at_n_eff1 >= 0.978);
    }
}

TEST_CASE("geometric rank equals the rounded theoretical limit at N = 40") {
    for (double w = 0.5; w <= 8.01; w += 0.5) {
        const RankReport report = effective_ranks(build_correlation({40, w}));
        REQUIRE(report.n_eff1.has_value());
        CHECK(*report.n_eff1 == theoretical_rank_rounded(w));
    }
}

TEST_CASE("rank ordering and monotonicity at N = 100") {
    std::optional<int> prev_n_eff1;
    for (double w : {0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0}) {
        const RankReport report = effective_ranks(build_correlation({100, w}));
        REQUIRE(report.n_eff1.has_value());
        if (report.n_eff2) CHECK(*report.n_eff1 <= *report.n_eff2);
        if (report.n_eff2 && report.n_eff3) CHECK(*report.n_eff2 <= *report.n_eff3);
        if (prev_n_eff1) CHECK(*report.n_eff1 >= *prev_n_eff1);
        prev_n_eff1 = report.n_eff1;
    }
}

TEST_CASE("degenerate regions are reported absent") {
    // N=3, W=1: all three eigenvalues sit far above 1e-10, so regions 2 and
    // 3 are empty; region 1 has exactly 3 points.
    const RankReport r3 = effective_ranks(build_correlation({3, 1.0}));
    CHECK(r3.n_eff1.has_value());
    CHECK_FALSE(r3.n_eff2.has_value());
    CHECK_FALSE(r3.n_eff3.has_value());

    // N=2: two points cannot define a turn anywhere.
    const RankReport r2 = effective_ranks(build_correlation({2, 0.5}));
    CHECK_FALSE(r2.n_eff1.has_value());
    CHECK_FALSE(r2.energy_at_n_eff1.has_value());
    CHECK(r2.theoretical == 2.0);
    CHECK(r2.entropy_rank > 1.0);
}

TEST_CASE("theoretical rank") {
    CHECK(theoretical_rank(1.0) == 3.0);
    CHECK(theoretical_rank(0.0) == 1.0);
    CHECK(theoretical_rank(4.0) == 9.0);
    CHECK(theoretical_rank_rounded(0.75) == 3);  // 2.5 rounds up
    CHECK(theoretical_rank_rounded(0.2) == 1);   // 1.4 rounds down
    CHECK_THROWS_AS(theoretical_rank(-0.1), std::domain_error);
}

TEST_CASE("entropy rank") {
    const std::vector<double> uniform = {1.0, 1.0, 1.0};
    CHECK(entropy_rank(uniform) == doctest::Approx(3.0).epsilon(1e-14));

    // Frozen from direct entropy arithmetic on the frozen (2, 0.5)
    // eigenvalues {1.3042421776, 0.6957578224}.
    const std::vector<double> two = eigenvalues_of(2, 0.5);
    CHECK(entropy_rank(two) == doctest::Approx(1.9081299996).epsilon(1e-9));

    // Convergence toward the 2W+1 limit at large N.
    const std::vector<double> big = eigenvalues_of(200, 4.0);
    CHECK(std::abs(entropy_rank(big) - 9.0) <= 1.0);

    // Zeros contribute nothing; an all-zero spectrum is rejected.
    const std::vector<double> padded = {1.0, 1.0, 1.0, 0.0, 0.0};
    CHECK(entropy_rank(padded) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(entropy_rank(std::vector<double>{0.0, 0.0}), std::domain_error);

    for (auto [n, w] : {std::pair{10, 1.0}, std::pair{100, 1.0}, std::pair{100, 4.0}}) {
        const auto lam = eigenvalues_of(n, w);
        const double e = entropy_rank(lam);
        CHECK(e >= 1.0);
        CHECK(e <= n);
    }
}

TEST_CASE("report carries the theoretical value exactly") {
    for (double w : {0.5, 1.25, 4.0}) {
        const RankReport report = effective_ranks(build_correlation({30, w}));
        CHECK(report.theoretical == 2.0 * w + 1.0);
        CHECK(report.theoretical_rounded == theoretical_rank_rounded(w));
    }
}
