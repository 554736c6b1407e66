#include "fas/modulation.hpp"

#include "fas/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fas {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

bool is_perfect_square(int m) {
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    return r * r == m;
}

} // namespace

std::string ModulationScheme::name() const {
    switch (family) {
        case ModulationFamily::bpsk: return "bpsk";
        case ModulationFamily::mpsk: return "psk" + std::to_string(order);
        case ModulationFamily::mpam: return "pam" + std::to_string(order);
        case ModulationFamily::mqam: return "qam" + std::to_string(order);
    }
    return "?";
}

ModulationScheme scheme_params(ModulationFamily family, int order) {
    ModulationScheme s;
    s.family = family;
    s.order = order;
    switch (family) {
        case ModulationFamily::bpsk:
            if (order != 2) throw std::domain_error("scheme_params: BPSK requires M = 2");
            s.p = 1.0;
            s.k = 2.0;
            s.exact = true;
            return s;
        case ModulationFamily::mpsk: {
            if (order < 4 || !is_power_of_two(order)) {
                throw std::domain_error("scheme_params: M-PSK requires M >= 4, a power of 2");
            }
            const double sin_term = std::sin(std::numbers::pi / order);
            s.p = 2.0;
            s.k = 2.0 * sin_term * sin_term;
            s.exact = false;
            return s;
        }
        case ModulationFamily::mpam:
            if (order < 2) throw std::domain_error("scheme_params: M-PAM requires M >= 2");
            s.p = 2.0 * (1.0 - 1.0 / order);
            s.k = 6.0 / (static_cast<double>(order) * order - 1.0);
            s.exact = true;
            return s;
        case ModulationFamily::mqam:
            if (order < 4 || !is_perfect_square(order)) {
                throw std::domain_error("scheme_params: M-QAM requires a perfect square M >= 4");
            }
            s.p = 4.0 * (1.0 - 1.0 / std::sqrt(static_cast<double>(order)));
            s.k = 3.0 / (order - 1.0);
            s.exact = false;
            return s;
    }
    throw std::domain_error("scheme_params: unknown family");
}

ModulationScheme parse_scheme(std::string_view name) {
    auto order_of = [&](std::size_t prefix_len) {
        const std::string digits(name.substr(prefix_len));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw std::domain_error("parse_scheme: bad modulation order in '" +
                                    std::string(name) + "'");
        }
        try {
            return std::stoi(digits);
        } catch (const std::out_of_range&) {
            throw std::domain_error("parse_scheme: modulation order out of range in '" +
                                    std::string(name) + "'");
        }
    };
    if (name == "bpsk") return scheme_params(ModulationFamily::bpsk, 2);
    if (name.starts_with("psk")) return scheme_params(ModulationFamily::mpsk, order_of(3));
    if (name.starts_with("pam")) return scheme_params(ModulationFamily::mpam, order_of(3));
    if (name.starts_with("qam")) return scheme_params(ModulationFamily::mqam, order_of(3));
    throw std::domain_error("parse_scheme: unknown scheme '" + std::string(name) + "'");
}

double conditional_ser(const ModulationScheme& scheme, double gamma) {
    if (!(gamma >= 0.0)) throw std::domain_error("conditional_ser: gamma must be >= 0");
    return std::min(1.0, scheme.p * specfun::q_function(std::sqrt(scheme.k * gamma)));
}

} // namespace fas
