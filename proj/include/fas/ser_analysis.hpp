#pragma once

#include "fas/correlation.hpp"
#include "fas/modulation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace fas {

struct SerCurve;

// High-SNR power law P_E ~ exp(log_coefficient) * gamma^{-diversity_order}.
// Everything is carried in log space; the coefficient alone can overflow a
// double near order 20.
struct AsymptoticModel {
    int diversity_order = 1;
    double log_coefficient = 0.0;
    ModulationScheme scheme;
    std::string spectrum_ref;  // e.g. "N=100,W=1,n_eff=3"

    // P_E at the given per-port average SNR, capped at 1.
    double evaluate_db(double snr_db) const;
};

// Coefficient and order for the top-n_eff eigenvalue product law:
// ln C = ln p + ln((2n-1)!!) - ln 2 - sum_{m<=n} ln lambda_m with n = n_eff.
AsymptoticModel make_asymptotic_model(const CorrelationSpectrum& spec,
                                      const ModulationScheme& scheme, int n_eff);

// Limiting density of the best-port SNR near zero (unit average SNR):
// n * x^{n-1} / prod_{m<=n} lambda_m. For n = N the full eigenvalue product
// must be strictly positive; rank-deficient spectra throw std::domain_error
// pointing at the effective-rank form.
double asymptotic_pdf(double x, int n, const CorrelationSpectrum& spec);

// Full-rank asymptotic SER. Requires a numerically full-rank spectrum
// (min lambda > 1e-12); otherwise throws std::domain_error directing the
// caller to asymptotic_ser_effective.
double asymptotic_ser_full(const ApertureGeometry& geom, const ModulationScheme& scheme,
                           double snr_db);
double asymptotic_ser_full(const CorrelationSpectrum& spec, const ModulationScheme& scheme,
                           double snr_db);

// Effective-rank asymptotic SER: diversity order n_eff, eigenvalue product
// over the leading n_eff modes.
double asymptotic_ser_effective(const ApertureGeometry& geom, const ModulationScheme& scheme,
                                int n_eff, double snr_db);
double asymptotic_ser_effective(const CorrelationSpectrum& spec, const ModulationScheme& scheme,
                                int n_eff, double snr_db);

// The diversity gain equals the effective rank; the function exists so that
// reports carry the named metric rather than a bare integer.
int diversity_gain(int n_eff);

// Coding gain G_c with P_E ~ (G_c * gamma)^{-n_eff}:
// G_c = (2 k^n / (p (2n-1)!!))^{1/n} * (prod lambda)^{1/n}, in log space.
double coding_gain(const ModulationScheme& scheme, const CorrelationSpectrum& spec, int n_eff);

// Least-squares slope of log10(SER) against log10(gamma) over points
// [first, last] of a curve, negated so the value estimates the diversity
// order. Needs >= 3 points, all with SER > 0.
double fit_loglog_slope(const SerCurve& curve, std::size_t first, std::size_t last);

} // namespace fas
