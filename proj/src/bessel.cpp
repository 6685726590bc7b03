#include <cmath>
#include <numbers>

#include "eulerprod/special.hpp"

namespace eulerprod {

namespace {

constexpr double kSeriesMax = 30.0;
constexpr double kSmall = 1e-3;

// sum_{n>=1} (t/2)^{2n} / n!^2, i.e. I0(t) - 1
double i0m1_series(double t) {
    const double q = 0.25 * t * t;
    double term = q;
    double sum = q;
    for (int n = 2; n < 200; ++n) {
        term *= q / (static_cast<double>(n) * n);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double i0_series(double t) { return 1.0 + i0m1_series(t); }

// exp(-t) I0(t) ~ (2 pi t)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8t)^k), t > 30.
// Terms shrink until k ~ 2t, far past where they drop below 1e-17.
double i0_scaled_asymptotic(double t) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * t);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * t);
}

}  // namespace

double bessel_i0(double t) {
    t = std::abs(t);
    if (t <= kSeriesMax) return i0_series(t);
    return i0_scaled_asymptotic(t) * std::exp(t);
}

double bessel_i0_scaled(double t) {
    t = std::abs(t);
    if (t <= kSeriesMax) return i0_series(t) * std::exp(-t);
    return i0_scaled_asymptotic(t);
}

double log_bessel_i0(double t) {
    t = std::abs(t);
    if (t < kSmall) {
        const double t2 = t * t;
        return t2 * (1.0 / 4 + t2 * (-1.0 / 64 + t2 * (1.0 / 576 - t2 * 11.0 / 49152)));
    }
    if (t <= kSeriesMax) return std::log1p(i0m1_series(t));
    return t + std::log(i0_scaled_asymptotic(t));
}

double log_cosh(double t) {
    t = std::abs(t);
    if (t < kSmall) {
        const double t2 = t * t;
        return t2 * (1.0 / 2 + t2 * (-1.0 / 12 + t2 * (1.0 / 45 - t2 * 17.0 / 2520)));
    }
    if (t < 1.0) {
        const double s = std::sinh(0.5 * t);
        return std::log1p(2.0 * s * s);
    }
    return t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

}  // namespace eulerprod
