#include "fas/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fas {

namespace {

// splitmix64 finalizer; mixes the (master_seed, stream_index) pair into a
// well-spread 64-bit engine seed.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t stream_seed(SeededStream id) {
    return mix64(id.master_seed ^ mix64(id.stream_index + 0x9e3779b97f4a7c15ULL));
}

// Uniform in the open interval (0,1): top 53 bits, offset by half an ulp so
// 0 is unreachable (Box-Muller takes a log of this).
double open_unit(std::mt19937_64& engine) {
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

GaussianStream::GaussianStream(SeededStream id) : engine_(stream_seed(id)) {}

void GaussianStream::next_complex_normal(double& re, double& im) {
    const double u1 = open_unit(engine_);
    const double u2 = open_unit(engine_);
    const double r = std::sqrt(-std::log(u1));      // E[r^2] = 1
    const double theta = 2.0 * std::numbers::pi * u2;
    re = r * std::cos(theta);
    im = r * std::sin(theta);
}

std::pair<int, double> select_best_port(const ChannelDraw& draw) {
    if (draw.h.empty()) throw std::domain_error("select_best_port: empty channel vector");
    int best = 0;
    double best_gain = std::norm(draw.h[0]);
    for (std::size_t n = 1; n < draw.h.size(); ++n) {
        const double gain = std::norm(draw.h[n]);
        if (gain > best_gain) {
            best_gain = gain;
            best = static_cast<int>(n);
        }
    }
    return {best + 1, best_gain};
}

ChannelSynthesizer::ChannelSynthesizer(const CorrelationSpectrum& spec,
                                       std::optional<int> truncation_k) {
    const int n = spec.ports();
    const int k = truncation_k.value_or(n);
    if (k < 1 || k > n) {
        throw std::domain_error("ChannelSynthesizer: truncation rank out of range");
    }
    b_ = spec.eigenvectors().leftCols(k) *
         spec.eigenvalues().head(k).cwiseSqrt().asDiagonal();
}

ChannelSynthesizer::Workspace ChannelSynthesizer::make_workspace() const {
    Workspace ws;
    ws.z_re.resize(rank());
    ws.z_im.resize(rank());
    ws.h_re.resize(ports());
    ws.h_im.resize(ports());
    return ws;
}

std::pair<int, double> ChannelSynthesizer::draw_best(GaussianStream& stream,
                                                     Workspace& ws) const {
    const int k = rank();
    for (int m = 0; m < k; ++m) stream.next_complex_normal(ws.z_re(m), ws.z_im(m));
    ws.h_re.noalias() = b_ * ws.z_re;
    ws.h_im.noalias() = b_ * ws.z_im;

    const int n = ports();
    int best = 0;
    double best_gain = ws.h_re(0) * ws.h_re(0) + ws.h_im(0) * ws.h_im(0);
    for (int i = 1; i < n; ++i) {
        const double gain = ws.h_re(i) * ws.h_re(i) + ws.h_im(i) * ws.h_im(i);
        if (gain > best_gain) {
            best_gain = gain;
            best = i;
        }
    }
    return {best + 1, best_gain};
}

ChannelDraw ChannelSynthesizer::draw(GaussianStream& stream) const {
    Workspace ws = make_workspace();
    ChannelDraw out;
    const auto [port, gain] = draw_best(stream, ws);
    out.best_port = port;
    out.best_gain_sq = gain;
    out.h.resize(ports());
    for (int i = 0; i < ports(); ++i) out.h[i] = {ws.h_re(i), ws.h_im(i)};
    return out;
}

ChannelDraw draw_channel(const CorrelationSpectrum& spec, GaussianStream& stream) {
    return ChannelSynthesizer(spec).draw(stream);
}

ChannelDraw draw_channel_truncated(const CorrelationSpectrum& spec, int k,
                                   GaussianStream& stream) {
    return ChannelSynthesizer(spec, k).draw(stream);
}

} // namespace fas
