#include "fas/cli_support.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fas {

namespace {

double parse_number(std::string_view token, std::string_view whole) {
    const std::string s(token);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw std::invalid_argument("bad SNR grid '" + std::string(whole) +
                                    "': expected A or A:STEP:B");
    }
    return v;
}

} // namespace

std::vector<double> parse_snr_grid(std::string_view text) {
    const std::size_t c1 = text.find(':');
    if (c1 == std::string_view::npos) {
        return {parse_number(text, text)};
    }
    const std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw std::invalid_argument("bad SNR grid '" + std::string(text) +
                                    "': expected A or A:STEP:B");
    }
    const double a = parse_number(text.substr(0, c1), text);
    const double step = parse_number(text.substr(c1 + 1, c2 - c1 - 1), text);
    const double b = parse_number(text.substr(c2 + 1), text);
    if (!(step > 0.0)) {
        throw std::invalid_argument("bad SNR grid '" + std::string(text) + "': STEP must be > 0");
    }
    if (b < a) {
        throw std::invalid_argument("bad SNR grid '" + std::string(text) + "': B must be >= A");
    }
    // Tolerance absorbs decimal-step rounding (e.g. 0:2.5:25) without ever
    // inventing a point a whole step beyond B.
    const long long m_max = static_cast<long long>(std::floor((b - a) / step + 1e-9));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(m_max) + 1);
    for (long long m = 0; m <= m_max; ++m) grid.push_back(a + static_cast<double>(m) * step);
    return grid;
}

int resolve_threads(int cli_value) {
    if (cli_value > 0) return cli_value;
    if (const char* env = std::getenv("FAS_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return omp_get_max_threads();
}

} // namespace fas
