#pragma once

namespace fas::specfun {

// Zeroth-order Bessel function of the first kind.
// Absolute error <= 1e-10 for |x| <= 200. Throws std::domain_error on
// non-finite input.
double bessel_j0(double x);

// Gaussian tail probability Q(x) = P(Z > x) for standard normal Z,
// computed as erfc(x/sqrt(2))/2. Throws std::domain_error on non-finite
// input. The result underflows to 0 for x beyond ~37.5 where Q drops under
// the smallest subnormal double; every conditional SER evaluated in this
// code sits far above that.
double q_function(double x);

// ln((2n-1)!!), the log double factorial of odd integers, accumulated as a
// sum of logs so it stays finite for n up to 1e4 and beyond. n >= 1.
double log_double_factorial_odd(int n);

// ln Gamma(n + 1/2) for integer n >= 1, through the half-integer identity
// Gamma(n+1/2) = (2n-1)!! / 2^n * sqrt(pi), evaluated in log space.
double log_gamma_half_integer(int n);

} // namespace fas::specfun
