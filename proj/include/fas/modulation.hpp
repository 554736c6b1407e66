#pragma once

#include <string>
#include <string_view>

namespace fas {

enum class ModulationFamily { bpsk, mpsk, mpam, mqam };

// Coherent-modulation parameterization: the conditional symbol error rate is
// modeled as p * Q(sqrt(k * gamma)) at instantaneous SNR gamma. `exact` is
// false for the families where that form is a dominant-term approximation.
struct ModulationScheme {
    ModulationFamily family = ModulationFamily::bpsk;
    int order = 2;
    double p = 1.0;
    double k = 2.0;
    bool exact = true;

    // CLI-facing name: "bpsk", "psk8", "pam4", "qam16", ...
    std::string name() const;
};

// Builds the (p, k) pair for a family/order combination:
//   BPSK          M = 2            p = 1           k = 2
//   M-PSK         M >= 4, 2^m      p = 2           k = 2 sin^2(pi/M)
//   M-PAM         M >= 2           p = 2(1 - 1/M)  k = 6/(M^2 - 1)
//   M-QAM         M >= 4, square   p = 4(1-1/sqrt(M))  k = 3/(M - 1)
// Invalid combinations throw std::domain_error.
ModulationScheme scheme_params(ModulationFamily family, int order);

// Parses a CLI scheme name as listed under ModulationScheme::name().
// Throws std::domain_error on anything unrecognized.
ModulationScheme parse_scheme(std::string_view name);

// min(1, p * Q(sqrt(k * gamma))): the union-bound forms exceed 1 at tiny
// SNR, and an SER is a probability. Negative gamma throws std::domain_error.
double conditional_ser(const ModulationScheme& scheme, double gamma);

} // namespace fas
