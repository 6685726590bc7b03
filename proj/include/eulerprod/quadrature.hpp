#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace eulerprod {

struct IntegralResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_evaluations = 5'000'000;
    int max_depth = 60;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod / 7-point Gauss integration.
///
/// `b` may be +infinity; the tail is mapped to a finite interval by u = 1/t
/// (splitting at t = 1 first when a <= 0). The integrand is never evaluated
/// at interval endpoints, so integrable endpoint singularities are fine.
///
/// Succeeds when the summed error estimate is at most
/// max(abs_tol, rel_tol * |value|), or when it is at the level of rounding
/// noise. Throws BudgetExceeded (carrying the best estimate) otherwise.
IntegralResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureOptions& opts);

inline IntegralResult integrate_adaptive(const Integrand& f, double a, double b, double tol) {
    QuadratureOptions opts;
    opts.abs_tol = tol;
    return integrate_adaptive(f, a, b, opts);
}

/// Integrates over [a, b] after cutting the range at each of `peaks` and at
/// geometrically shrinking distances from them, down to a width of about
/// 0.1/sqrt(1 + sharpness). Meant for integrands that behave like
/// exp(-sharpness * (x - peak)^2) near a peak, which a plain adaptive rule
/// can miss entirely when the peak is narrow.
IntegralResult integrate_peaked(const Integrand& f, double a, double b, std::span<const double> peaks,
                                double sharpness, const QuadratureOptions& opts);

}  // namespace eulerprod
