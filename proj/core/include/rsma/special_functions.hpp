#pragma once

#include <numbers>
#include <vector>

namespace rsma {

inline constexpr double kEulerGamma = std::numbers::egamma_v<double>;

// Order-zero Bessel function of the first kind. Even in x; non-finite input
// throws DomainError.
double bessel_j0(double x);

// psi(x) = Gamma'(x) / Gamma(x) for x > 0.
double digamma(double x);

// Generalized exponential integral E_m(x) = int_1^inf e^{-xt} t^{-m} dt for
// integer m >= 0 and x > 0.
double exp_integral_em(int m, double x);

// e^x E_m(x). Stays representable for arguments where E_m(x) itself
// underflows, e.g. x = K^2 / (P theta t) with t -> 0.
double scaled_exp_integral_em(int m, double x);

// e^x E_m(x) for m = 1..max_order, element m-1 holding order m. Evaluates one
// anchor order directly and fills the rest by recurrence in the stable
// direction (downward below x, upward above x).
std::vector<double> scaled_exp_integral_sequence(int max_order, double x);

// sum_{m=1}^{max_order} e^x E_m(x).
double scaled_exp_integral_sum(int max_order, double x);

// Round half away from zero, returned as an integer.
long round_half_away(double x);

}  // namespace rsma
