#pragma once

#include "fas/correlation.hpp"

#include <cstddef>
#include <optional>
#include <span>

namespace fas {

// Contiguous split of a descending spectrum into three regions:
//   region 1: lambda >  1e-10          [0, r1_end)
//   region 2: 1e-15 < lambda <= 1e-10  [r1_end, r2_end)
//   region 3: lambda <= 1e-15          [r2_end, size)
// Indices are 0-based positions into the sorted vector.
struct SpectrumPartition {
    std::size_t r1_end = 0;
    std::size_t r2_end = 0;
    std::size_t size = 0;
};

// Throws std::domain_error if the input is not sorted descending.
SpectrumPartition partition_spectrum(std::span<const double> lambda);

// A scree point: eigenvalue index (1-based, as plotted) and log10 eigenvalue.
struct KneePoint {
    double index = 0.0;
    double log10_value = 0.0;
};

// Sharpest-turn detection on one region of the scree curve. Both axes are
// min-max normalized to [0,1] (an axis with zero range maps to the constant
// 0.5); for each interior point the cosine between the vectors to its two
// neighbors is computed, and the point with the largest cosine (the tightest
// angle) wins, smallest index on ties. Returns the local 0-based position,
// or nullopt when fewer than 3 points make the turn undefined.
std::optional<std::size_t> knee_of_segment(std::span<const KneePoint> points);

struct RankReport {
    // Global 1-based indices into the sorted spectrum; absent when the
    // corresponding region has fewer than 3 points.
    std::optional<int> n_eff1, n_eff2, n_eff3;
    double theoretical = 1.0;      // 2W + 1
    int theoretical_rounded = 1;   // nearest integer, ties up
    double entropy_rank = 1.0;
    std::optional<double> energy_at_n_eff1;
};

// Runs the partition + per-region knee detection against a spectrum and
// fills in the theoretical and entropy measures. Degenerate regions yield
// absent fields, never an exception.
RankReport effective_ranks(const CorrelationSpectrum& spec);

// The aperture-limited number of spatial degrees of freedom, 2W + 1.
double theoretical_rank(double w);
int theoretical_rank_rounded(double w);

// exp(Shannon entropy) of the normalized eigenvalue distribution
// p_n = lambda_n / sum(lambda); zero eigenvalues contribute nothing.
// Throws std::domain_error when the spectrum sums to zero.
double entropy_rank(std::span<const double> lambda);

} // namespace fas
