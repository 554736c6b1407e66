#include "fas/ser_sim.hpp"

#include "fas/channel.hpp"
#include "fas/specfun.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fas {

namespace {

constexpr double kZ95 = 1.959963984540054;  // Phi^{-1}(0.975)

// Neumaier-compensated accumulator: the chunk partials span many orders of
// magnitude at deep SER levels, and the acceptance gates require the reduced
// sums to be independent of how chunks were scheduled.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct GridTables {
    std::vector<double> gamma_bar;       // linear SNR per grid point
    std::vector<double> sqrt_gamma_bar;  // BPSK symbol amplitudes
};

GridTables make_grid_tables(const std::vector<double>& snr_grid_db) {
    GridTables t;
    t.gamma_bar.reserve(snr_grid_db.size());
    t.sqrt_gamma_bar.reserve(snr_grid_db.size());
    for (double db : snr_grid_db) {
        const double g = std::pow(10.0, db / 10.0);
        t.gamma_bar.push_back(g);
        t.sqrt_gamma_bar.push_back(std::sqrt(g));
    }
    return t;
}

// One chunk of trials, fully determined by (config.seed, chunk_index).
// Writes per-point partial sums of the estimator and its square into the
// chunk's slots of the global partial arrays.
void run_chunk(const SimConfig& cfg, const ChannelSynthesizer& synth,
               const GridTables& grid, std::uint64_t chunk_index,
               double* partial_sum, double* partial_sumsq) {
    const std::size_t points = grid.gamma_bar.size();
    std::vector<double> sum(points, 0.0);
    std::vector<double> sumsq(points, 0.0);

    GaussianStream stream({cfg.seed, chunk_index});
    ChannelSynthesizer::Workspace ws = synth.make_workspace();

    const std::uint64_t begin = chunk_index * cfg.chunk_size;
    const std::uint64_t end = std::min(begin + cfg.chunk_size, cfg.trials);

    if (cfg.method == SimMethod::semi_analytic) {
        for (std::uint64_t t = begin; t < end; ++t) {
            const double gain = synth.draw_best(stream, ws).second;
            for (std::size_t j = 0; j < points; ++j) {
                const double e = conditional_ser(cfg.scheme, grid.gamma_bar[j] * gain);
                sum[j] += e;
                sumsq[j] += e * e;
            }
        }
    } else {
        // Symbol-level BPSK: send s = +sqrt(gamma_bar), receive
        // y = h s + w with w ~ CN(0,1), decide by the sign of Re(h* y).
        // One noise draw per trial serves every grid point, mirroring the
        // common-random-numbers structure of the semi-analytic path.
        for (std::uint64_t t = begin; t < end; ++t) {
            const auto [port, gain] = synth.draw_best(stream, ws);
            double w_re, w_im;
            stream.next_complex_normal(w_re, w_im);
            const int i = port - 1;
            const double cross = ws.h_re(i) * w_re + ws.h_im(i) * w_im;  // Re(h* w)
            for (std::size_t j = 0; j < points; ++j) {
                const double metric = gain * grid.sqrt_gamma_bar[j] + cross;
                if (metric < 0.0) {
                    sum[j] += 1.0;
                    sumsq[j] += 1.0;
                }
            }
        }
    }

    for (std::size_t j = 0; j < points; ++j) {
        partial_sum[j] = sum[j];
        partial_sumsq[j] = sumsq[j];
    }
}

SerCurve reduce_curve(const SimConfig& cfg, std::uint64_t n_chunks,
                      const std::vector<double>& partial_sum,
                      const std::vector<double>& partial_sumsq) {
    const std::size_t points = cfg.snr_grid_db.size();
    SerCurve curve;
    curve.config = cfg;
    curve.points.resize(points);

    const double trials = static_cast<double>(cfg.trials);
    for (std::size_t j = 0; j < points; ++j) {
        CompensatedSum sum, sumsq;
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            sum.add(partial_sum[c * points + j]);
            sumsq.add(partial_sumsq[c * points + j]);
        }
        const double mean = sum.value() / trials;
        const double var =
            std::max(0.0, (sumsq.value() - trials * mean * mean) / (trials - 1.0));
        SerPoint& pt = curve.points[j];
        pt.snr_db = cfg.snr_grid_db[j];
        pt.ser = mean;
        pt.ci_half_width = kZ95 * std::sqrt(var / trials);
        pt.trials = cfg.trials;
    }
    return curve;
}

SerCurve run_simulation(const SimConfig& cfg, bool parallel) {
    cfg.validate();
    const CorrelationSpectrum spec = build_correlation(cfg.geometry);
    const ChannelSynthesizer synth(spec, cfg.truncation_k);
    const GridTables grid = make_grid_tables(cfg.snr_grid_db);

    const std::size_t points = cfg.snr_grid_db.size();
    const std::uint64_t n_chunks = (cfg.trials + cfg.chunk_size - 1) / cfg.chunk_size;
    std::vector<double> partial_sum(n_chunks * points);
    std::vector<double> partial_sumsq(n_chunks * points);

    if (parallel) {
        const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
            run_chunk(cfg, synth, grid, static_cast<std::uint64_t>(c),
                      &partial_sum[static_cast<std::size_t>(c) * points],
                      &partial_sumsq[static_cast<std::size_t>(c) * points]);
        }
    } else {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            run_chunk(cfg, synth, grid, c, &partial_sum[c * points],
                      &partial_sumsq[c * points]);
        }
    }
    return reduce_curve(cfg, n_chunks, partial_sum, partial_sumsq);
}

} // namespace

void SimConfig::validate() const {
    geometry.validate();
    if (snr_grid_db.empty()) throw std::domain_error("SimConfig: empty SNR grid");
    for (std::size_t j = 1; j < snr_grid_db.size(); ++j) {
        if (!(snr_grid_db[j] > snr_grid_db[j - 1])) {
            throw std::domain_error("SimConfig: SNR grid must be strictly ascending");
        }
    }
    if (trials < 10'000) {
        throw std::domain_error("SimConfig: at least 1e4 trials required for CI validity");
    }
    if (chunk_size < 1) throw std::domain_error("SimConfig: chunk_size must be >= 1");
    if (truncation_k && (*truncation_k < 1 || *truncation_k > geometry.ports)) {
        throw std::domain_error("SimConfig: truncation_k out of range");
    }
    if (method == SimMethod::symbol_level && scheme.family != ModulationFamily::bpsk) {
        throw std::domain_error("SimConfig: symbol-level simulation supports BPSK only");
    }
    if (threads < 0) throw std::domain_error("SimConfig: threads must be >= 0");
}

SerCurve simulate_ser(const SimConfig& config) { return run_simulation(config, true); }

SerCurve simulate_ser_serial(const SimConfig& config) { return run_simulation(config, false); }

double empirical_small_gamma_cdf(const ApertureGeometry& geometry, double x_threshold,
                                 std::uint64_t trials, std::uint64_t seed) {
    geometry.validate();
    if (!(x_threshold > 0.0)) {
        throw std::domain_error("empirical_small_gamma_cdf: threshold must be > 0");
    }
    const CorrelationSpectrum spec = build_correlation(geometry);

    // Guard against meaningless comparisons: the limiting CDF x^N / prod(lambda)
    // predicts the hit count; require at least 100 expected hits.
    const double ln_pred =
        geometry.ports * std::log(x_threshold) - log_det(spec);
    const double pred = std::min(1.0, std::exp(ln_pred));
    if (pred * static_cast<double>(trials) < 100.0) {
        throw std::domain_error(
            "empirical_small_gamma_cdf: expected hit count below 100; "
            "raise trials or the threshold");
    }

    const ChannelSynthesizer synth(spec, std::nullopt);
    constexpr std::uint64_t chunk_size = 65'536;
    const std::uint64_t n_chunks = (trials + chunk_size - 1) / chunk_size;
    std::vector<std::uint64_t> hits(n_chunks, 0);

#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < static_cast<long long>(n_chunks); ++c) {
        GaussianStream stream({seed, static_cast<std::uint64_t>(c)});
        ChannelSynthesizer::Workspace ws = synth.make_workspace();
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
        const std::uint64_t end = std::min(begin + chunk_size, trials);
        std::uint64_t local = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            const double gain = synth.draw_best(stream, ws).second;
            if (gain <= x_threshold) ++local;
        }
        hits[static_cast<std::size_t>(c)] = local;
    }

    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    return static_cast<double>(total) / static_cast<double>(trials);
}

} // namespace fas
