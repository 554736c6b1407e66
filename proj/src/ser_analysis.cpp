#include "fas/ser_analysis.hpp"

#include "fas/ser_sim.hpp"
#include "fas/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fas {

namespace {

constexpr double kFullRankFloor = 1e-12;

double ln_gamma_bar(double snr_db) { return snr_db * std::numbers::ln10 / 10.0; }

// ln p + ln((2n-1)!!) - ln 2 - sum_{m<=n} ln lambda_m - n ln k
double log_coefficient_for(const CorrelationSpectrum& spec, const ModulationScheme& scheme,
                           int n_eff) {
    if (n_eff < 1 || n_eff > spec.positive_count()) {
        throw std::domain_error("asymptotic model: n_eff outside the strictly positive spectrum");
    }
    return std::log(scheme.p) + specfun::log_double_factorial_odd(n_eff) -
           std::numbers::ln2 - log_det(spec, n_eff) - n_eff * std::log(scheme.k);
}

std::string spectrum_ref_for(const CorrelationSpectrum& spec, int n_eff) {
    return "N=" + std::to_string(spec.ports()) +
           ",W=" + std::to_string(spec.geometry().width) +
           ",n_eff=" + std::to_string(n_eff);
}

} // namespace

double AsymptoticModel::evaluate_db(double snr_db) const {
    const double ln_p = log_coefficient - diversity_order * ln_gamma_bar(snr_db);
    return std::min(1.0, std::exp(ln_p));
}

AsymptoticModel make_asymptotic_model(const CorrelationSpectrum& spec,
                                      const ModulationScheme& scheme, int n_eff) {
    AsymptoticModel model;
    model.diversity_order = n_eff;
    model.log_coefficient = log_coefficient_for(spec, scheme, n_eff);
    model.scheme = scheme;
    model.spectrum_ref = spectrum_ref_for(spec, n_eff);
    return model;
}

double asymptotic_pdf(double x, int n, const CorrelationSpectrum& spec) {
    if (!(x > 0.0)) throw std::domain_error("asymptotic_pdf: x must be > 0");
    if (n < 1 || n > spec.ports()) throw std::domain_error("asymptotic_pdf: n out of range");
    if (n > spec.positive_count()) {
        throw std::domain_error(
            "asymptotic_pdf: spectrum is rank deficient at this order; "
            "evaluate at an effective rank within the positive spectrum");
    }
    const double ln_f = std::log(static_cast<double>(n)) + (n - 1) * std::log(x) -
                        log_det(spec, n);
    return std::exp(ln_f);
}

double asymptotic_ser_full(const CorrelationSpectrum& spec, const ModulationScheme& scheme,
                           double snr_db) {
    const int n = spec.ports();
    if (spec.positive_count() < n || spec.eigenvalues()(n - 1) <= kFullRankFloor) {
        throw std::domain_error(
            "asymptotic_ser_full: spectrum is not numerically full rank; "
            "use asymptotic_ser_effective");
    }
    return make_asymptotic_model(spec, scheme, n).evaluate_db(snr_db);
}

double asymptotic_ser_full(const ApertureGeometry& geom, const ModulationScheme& scheme,
                           double snr_db) {
    return asymptotic_ser_full(build_correlation(geom), scheme, snr_db);
}

double asymptotic_ser_effective(const CorrelationSpectrum& spec, const ModulationScheme& scheme,
                                int n_eff, double snr_db) {
    return make_asymptotic_model(spec, scheme, n_eff).evaluate_db(snr_db);
}

double asymptotic_ser_effective(const ApertureGeometry& geom, const ModulationScheme& scheme,
                                int n_eff, double snr_db) {
    return asymptotic_ser_effective(build_correlation(geom), scheme, n_eff, snr_db);
}

int diversity_gain(int n_eff) {
    if (n_eff < 1) throw std::domain_error("diversity_gain: n_eff must be >= 1");
    return n_eff;
}

double coding_gain(const ModulationScheme& scheme, const CorrelationSpectrum& spec, int n_eff) {
    if (n_eff < 1 || n_eff > spec.positive_count()) {
        throw std::domain_error("coding_gain: n_eff outside the strictly positive spectrum");
    }
    const double ln_gc =
        (std::numbers::ln2 + n_eff * std::log(scheme.k) - std::log(scheme.p) -
         specfun::log_double_factorial_odd(n_eff) + log_det(spec, n_eff)) /
        n_eff;
    return std::exp(ln_gc);
}

double fit_loglog_slope(const SerCurve& curve, std::size_t first, std::size_t last) {
    if (first > last || last >= curve.points.size() || last - first + 1 < 3) {
        throw std::domain_error("fit_loglog_slope: window must cover >= 3 curve points");
    }
    const std::size_t count = last - first + 1;
    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const SerPoint& pt = curve.points[i];
        if (!(pt.ser > 0.0)) {
            throw std::domain_error("fit_loglog_slope: window contains SER <= 0");
        }
        t_mean += pt.snr_db / 10.0;        // log10(gamma_bar)
        y_mean += std::log10(pt.ser);
    }
    t_mean /= static_cast<double>(count);
    y_mean /= static_cast<double>(count);

    double cov = 0.0, var = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
        const double dt = curve.points[i].snr_db / 10.0 - t_mean;
        const double dy = std::log10(curve.points[i].ser) - y_mean;
        cov += dt * dy;
        var += dt * dt;
    }
    if (var == 0.0) {
        throw std::domain_error("fit_loglog_slope: degenerate window (single SNR value)");
    }
    return -cov / var;
}

} // namespace fas
