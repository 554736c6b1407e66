#include "fas/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fas::specfun {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

// Power series sum_m (-1)^m (x/2)^{2m} / (m!)^2 in long double. The largest
// term grows like e^x / sqrt(2 pi x), so by the crossover at x = 18 the
// alternating sum cancels ~6 of the 18 long-double digits; the surviving
// precision still clears the 1e-10 absolute target by orders of magnitude.
long double j0_series(long double x) {
    const long double q = x * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int m = 1; m < 400; ++m) {
        term *= -q / (static_cast<long double>(m) * m);
        sum += term;
        if (std::abs(term) < 1e-22L * (1.0L + std::abs(sum))) break;
    }
    return sum;
}

// Hankel expansion J0(x) = sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)) with
// chi = x - pi/4 and coefficient magnitudes u_k = ((2k-1)!!)^2 / (k! 8^k x^k):
//   P =  u_0 - u_2 + u_4 - ...      (even k, signs +,-,+,...)
//   Q = -u_1 + u_3 - u_5 + ...      (odd k,  signs -,+,-,...)
// The series is asymptotic; summation stops once u_k stops decreasing. At the
// x = 18 crossover the smallest term is ~e^{-36}, far below the contract.
long double j0_asymptotic(long double x) {
    long double p = 0.0L, q = 0.0L;
    long double u = 1.0L;
    long double prev = 1e30L;
    for (int k = 0; k < 60; ++k) {
        if (u > prev) break;
        prev = u;
        switch (k % 4) {
            case 0: p += u; break;
            case 1: q -= u; break;
            case 2: p -= u; break;
            case 3: q += u; break;
        }
        const long double odd = 2.0L * k + 1.0L;
        u *= odd * odd / (8.0L * (k + 1.0L) * x);
    }
    const long double chi = x - kPi / 4.0L;
    return std::sqrt(2.0L / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(who) + ": non-finite argument");
    }
}

} // namespace

double bessel_j0(double x) {
    require_finite(x, "bessel_j0");
    const long double ax = std::abs(static_cast<long double>(x));
    if (ax < 18.0L) return static_cast<double>(j0_series(ax));
    return static_cast<double>(j0_asymptotic(ax));
}

double q_function(double x) {
    require_finite(x, "q_function");
    return 0.5 * std::erfc(x * 0.70710678118654752440084436210485); // x / sqrt(2)
}

double log_double_factorial_odd(int n) {
    if (n < 1) throw std::domain_error("log_double_factorial_odd: n must be >= 1");
    double sum = 0.0;
    for (int j = 2; j <= n; ++j) sum += std::log(2.0 * j - 1.0);
    return sum;
}

double log_gamma_half_integer(int n) {
    if (n < 1) throw std::domain_error("log_gamma_half_integer: n must be >= 1");
    constexpr double half_log_pi = 0.57236494292470008707171367567653;
    constexpr double log_two = 0.69314718055994530941723212145818;
    return log_double_factorial_odd(n) - n * log_two + half_log_pi;
}

} // namespace fas::specfun
