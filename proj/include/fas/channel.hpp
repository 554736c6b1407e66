#pragma once

#include "fas/correlation.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace fas {

// Identifies one deterministic substream of the master seed. Distinct
// stream_index values give statistically independent streams; the same pair
// always replays the same draws, no matter how many workers exist.
struct SeededStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// Stateful generator over one substream. Complex normals come from
// Box-Muller on (0,1) uniforms built from the top 53 bits of mt19937_64
// output, so every value is a pure function of (master_seed, stream_index,
// draw count).
class GaussianStream {
public:
    explicit GaussianStream(SeededStream id);

    // CN(0,1): real and imaginary parts each N(0, 1/2).
    void next_complex_normal(double& re, double& im);

private:
    std::mt19937_64 engine_;
};

struct ChannelDraw {
    std::vector<std::complex<double>> h;
    int best_port = 1;          // 1-based, smallest index on exact ties
    double best_gain_sq = 0.0;  // max_n |h_n|^2
};

// argmax_n |h_n| over a draw's channel vector; returns the 1-based port and
// |h|^2 there. Ties resolve to the smallest index.
std::pair<int, double> select_best_port(const ChannelDraw& draw);

// Precomputed synthesis map h = B z with B = U_{:,1..K} diag(sqrt(lambda))
// and z i.i.d. CN(0,1). K = N reproduces the full channel law; smaller K
// restricts h to the span of the leading K eigenvectors. One instance is
// immutable and shared; per-thread scratch lives in Workspace.
class ChannelSynthesizer {
public:
    ChannelSynthesizer(const CorrelationSpectrum& spec,
                       std::optional<int> truncation_k = std::nullopt);

    int ports() const { return static_cast<int>(b_.rows()); }
    int rank() const { return static_cast<int>(b_.cols()); }

    struct Workspace {
        Eigen::VectorXd z_re, z_im, h_re, h_im;
    };
    Workspace make_workspace() const;

    // Draws z, synthesizes h into the workspace, and returns the selected
    // port (1-based) with its power gain. The hot path of every simulation.
    std::pair<int, double> draw_best(GaussianStream& stream, Workspace& ws) const;

    // Convenience wrapper that materializes the full ChannelDraw.
    ChannelDraw draw(GaussianStream& stream) const;

private:
    Eigen::MatrixXd b_;
};

// Allocating draws for tests and small experiments; each call advances the
// stream. Hot loops should hold a ChannelSynthesizer and a Workspace instead.
ChannelDraw draw_channel(const CorrelationSpectrum& spec, GaussianStream& stream);
ChannelDraw draw_channel_truncated(const CorrelationSpectrum& spec, int k,
                                   GaussianStream& stream);

} // namespace fas
