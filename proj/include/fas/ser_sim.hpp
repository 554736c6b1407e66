#pragma once

#include "fas/correlation.hpp"
#include "fas/modulation.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fas {

enum class SimMethod {
    semi_analytic,  // average the conditional SER over channel draws
    symbol_level,   // transmit/detect BPSK symbols and count errors
};

struct SimConfig {
    ApertureGeometry geometry;
    ModulationScheme scheme;
    std::vector<double> snr_grid_db;  // strictly ascending, nonempty
    std::uint64_t trials = 1'000'000; // >= 1e4 so the normal CI is defensible
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = 65'536;
    std::optional<int> truncation_k;
    SimMethod method = SimMethod::semi_analytic;
    int threads = 0;                  // 0 = library default

    void validate() const;            // std::domain_error on any violation
};

struct SerPoint {
    double snr_db = 0.0;
    double ser = 0.0;
    double ci_half_width = 0.0;  // 95%, normal approximation
    std::uint64_t trials = 0;
};

struct SerCurve {
    SimConfig config;
    std::vector<SerPoint> points;  // one per grid entry, same order
};

// Monte Carlo SER estimate over the SNR grid. One channel draw per trial is
// shared by every grid point (common random numbers), so points of a curve
// are correlated and the curve is smooth. Trials are split into fixed-size
// chunks, each owning substream seed = chunk index; chunk partials are
// reduced in chunk order with compensated summation, making the output
// bit-identical for any worker count.
SerCurve simulate_ser(const SimConfig& config);

// Single-threaded reference implementation of the same contract; produces
// bit-identical curves. Kept as the baseline the parallel engine is
// benchmarked and tested against.
SerCurve simulate_ser_serial(const SimConfig& config);

// Fraction of draws whose best-port gain falls at or below x_threshold, with
// unit average SNR. Refuses runs whose expected hit count is below 100
// (std::domain_error): a handful of hits cannot support a CDF comparison.
double empirical_small_gamma_cdf(const ApertureGeometry& geometry, double x_threshold,
                                 std::uint64_t trials, std::uint64_t seed);

} // namespace fas
