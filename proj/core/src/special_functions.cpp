#include "rsma/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include "rsma/errors.hpp"

namespace rsma {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 100000;

void require_positive(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(who) + ": argument must be finite and > 0, got " + std::to_string(x));
}

// e^x E_n(x) for n >= 1, x <= 1: power series (Abramowitz & Stegun 5.1.12).
double scaled_en_series(int n, double x) {
    const int nm1 = n - 1;
    double sum = (nm1 != 0) ? 1.0 / nm1 : -std::log(x) - kEulerGamma;
    double fact = 1.0;
    for (int i = 1; i < kMaxIterations; ++i) {
        fact *= -x / i;
        double term;
        if (i != nm1) {
            term = -fact / (i - nm1);
        } else {
            double psi = -kEulerGamma;
            for (int k = 1; k <= nm1; ++k) psi += 1.0 / k;
            term = fact * (-std::log(x) + psi);
        }
        sum += term;
        if (std::abs(term) <= std::abs(sum) * kEps && i > nm1) break;
    }
    return sum * std::exp(x);
}

// e^x E_n(x) for n >= 1, x > 1: modified Lentz evaluation of the continued
// fraction E_n(x) = e^{-x} (1/(x+n-) 1*n/(x+n+2-) 2(n+1)/(x+n+4-) ...).
double scaled_en_fraction(int n, double x) {
    constexpr double tiny = 1e-300;
    double b = x + n;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double a = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) <= 4.0 * kEps) return h;
    }
    throw DomainError("scaled_exp_integral_em: continued fraction failed to converge");
}

double scaled_en_direct(int n, double x) {
    if (n == 0) return 1.0 / x;
    return x <= 1.0 ? scaled_en_series(n, x) : scaled_en_fraction(n, x);
}

}  // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_j0: argument must be finite");
    return boost::math::cyl_bessel_j(0, std::abs(x));
}

double digamma(double x) {
    require_positive(x, "digamma");
    return boost::math::digamma(x);
}

double scaled_exp_integral_em(int m, double x) {
    if (m < 0) throw DomainError("exp_integral_em: order must be >= 0");
    require_positive(x, "exp_integral_em");
    return scaled_en_direct(m, x);
}

double exp_integral_em(int m, double x) {
    if (m == 0) {
        require_positive(x, "exp_integral_em");
        return std::exp(-x) / x;
    }
    return std::exp(-x) * scaled_exp_integral_em(m, x);
}

std::vector<double> scaled_exp_integral_sequence(int max_order, double x) {
    if (max_order < 1) throw DomainError("scaled_exp_integral_sequence: max_order must be >= 1");
    require_positive(x, "scaled_exp_integral_sequence");

    // s_m = e^x E_m(x) satisfies m s_{m+1} = 1 - x s_m. Going up multiplies an
    // error by x/m, going down by m/x, so anchor near m = x.
    const double anchor_real = std::clamp(std::floor(x + 0.5), 1.0, static_cast<double>(max_order));
    const int anchor = static_cast<int>(anchor_real);

    std::vector<double> s(static_cast<std::size_t>(max_order));
    s[anchor - 1] = scaled_en_direct(anchor, x);
    for (int m = anchor - 1; m >= 1; --m) s[m - 1] = (1.0 - m * s[m]) / x;
    for (int m = anchor; m < max_order; ++m) s[m] = (1.0 - x * s[m - 1]) / m;
    return s;
}

double scaled_exp_integral_sum(int max_order, double x) {
    const auto s = scaled_exp_integral_sequence(max_order, x);
    double total = 0.0;
    for (double v : s) total += v;
    return total;
}

long round_half_away(double x) {
    return static_cast<long>(std::round(x));
}

}  // namespace rsma
