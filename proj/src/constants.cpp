#include "eulerprod/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eulerprod/error.hpp"
#include "eulerprod/quadrature.hpp"
#include "eulerprod/special.hpp"

namespace eulerprod {

namespace {

constexpr double kPieceTol = 1e-11;
constexpr double kSmallT = 1e-3;

// Assembles 1 + int_0^1 h/t^2 + int_1^inf f/t^2 where f = h - t is supplied
// directly, so large-t evaluations never subtract two huge numbers.
ConstantReport assemble(std::string name, const Integrand& h_over_t2, const Integrand& f_tail) {
    QuadratureOptions opts;
    opts.abs_tol = kPieceTol;
    const IntegralResult head = integrate_adaptive(h_over_t2, 0.0, 1.0, opts);
    const Integrand tail = [&f_tail](double t) { return f_tail(t) / (t * t); };
    const IntegralResult rest = integrate_adaptive(tail, 1.0, INFINITY, opts);
    ConstantReport out;
    out.name = std::move(name);
    out.piece_0_1 = head.value;
    out.piece_1_inf = rest.value;
    out.value = 1.0 + out.piece_0_1 + out.piece_1_inf;
    out.tolerance = std::max(1e-9, head.abs_error_estimate + rest.abs_error_estimate);
    return out;
}

// Sum over j of sin^2((k - 2j) theta / 2); equals (k+1)(1 - S(theta))/2 where
// S is the normalised trace. Written this way there is no cancellation near theta = 0.
double half_chord_sum(int k, double theta) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double v = std::sin(0.5 * (k - 2 * j) * theta);
        s += v * v;
    }
    return s;
}

double normalised_trace(int k, double theta) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += std::cos((k - 2 * j) * theta);
    return s / (k + 1);
}

// E(S^n), n = 1..4, under (2/pi) sin^2.
std::array<double, 5> sato_tate_trace_moments(int k) {
    std::array<double, 5> m{1.0, 0, 0, 0, 0};
    QuadratureOptions opts;
    opts.abs_tol = 1e-15;
    for (int n = 1; n <= 4; ++n) {
        const Integrand g = [k, n](double th) {
            const double s = std::sin(th);
            return std::pow(normalised_trace(k, th), n) * s * s;
        };
        m[n] = integrate_adaptive(g, 0.0, std::numbers::pi, opts).value * 2.0 / std::numbers::pi;
    }
    return m;
}

// (2/pi) int_0^pi exp(-(2t/(k+1)) half_chord_sum) sin^2, i.e. e^{-t} m(t).
double scaled_sato_tate_mgf(int k, double t) {
    const bool even = k % 2 == 0;
    const double half = even ? 0.5 * std::numbers::pi : std::numbers::pi;
    const double coeff = 2.0 * t / (k + 1);
    const Integrand g = [k, coeff](double th) {
        const double s = std::sin(th);
        return std::exp(-coeff * half_chord_sum(k, th)) * s * s;
    };
    // Near theta = 0 the exponent is about -t k (k+2) theta^2 / 6.
    const double width = std::sqrt(6.0 / (t * k * (k + 2)));
    const double cut = 50.0 * width;
    QuadratureOptions opts;
    opts.abs_tol = std::numeric_limits<double>::min();
    opts.rel_tol = 1e-13;
    double total;
    if (cut >= half) {
        total = integrate_adaptive(g, 0.0, half, opts).value;
    } else {
        const double main = integrate_adaptive(g, 0.0, cut, opts).value;
        QuadratureOptions rest_opts;
        rest_opts.abs_tol = std::max(1e-15 * main, std::numeric_limits<double>::min());
        total = main + integrate_adaptive(g, cut, half, rest_opts).value;
    }
    if (even) total *= 2.0;
    return total * 2.0 / std::numbers::pi;
}

void check_k(int k) {
    if (k < 1) throw DomainError("sato-tate symmetric power: k must be >= 1, got " + std::to_string(k));
}

double h_k_small(int k, double t) {
    const auto m = sato_tate_trace_moments(k);
    const double k1 = m[1];
    const double k2 = m[2] - m[1] * m[1];
    const double k3 = m[3] - 3 * m[1] * m[2] + 2 * std::pow(m[1], 3);
    const double k4 = m[4] - 4 * m[3] * m[1] - 3 * m[2] * m[2] + 12 * m[2] * m[1] * m[1] - 6 * std::pow(m[1], 4);
    return t * (k1 + t * (k2 / 2 + t * (k3 / 6 + t * k4 / 24)));
}

double h_k_moderate(int k, double t) {
    const Integrand g = [k, t](double th) {
        const double s = std::sin(th);
        return std::expm1(t * normalised_trace(k, th)) * s * s;
    };
    QuadratureOptions opts;
    opts.abs_tol = 1e-18;
    opts.rel_tol = 1e-13;
    return std::log1p(integrate_adaptive(g, 0.0, std::numbers::pi, opts).value * 2.0 / std::numbers::pi);
}

// h_k(t) - t for t > 1.
double h_k_minus_t(int k, double t) { return std::log(scaled_sato_tate_mgf(k, t)); }

}  // namespace

ConstantReport constant_C1() {
    return assemble(
        "C1", [](double y) { return y < kSmallT ? 0.5 - y * y / 12 + std::pow(y, 4) / 45 : log_cosh(y) / (y * y); },
        [](double y) { return std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2; });
}

ConstantReport constant_C2() {
    return assemble(
        "C2",
        [](double t) {
            return t < kSmallT ? 0.25 - t * t / 64 + std::pow(t, 4) / 576 : log_bessel_i0(t) / (t * t);
        },
        [](double t) { return std::log(bessel_i0_scaled(t)); });
}

double C1_value() {
    static const double value = constant_C1().value;
    return value;
}

double C2_value() {
    static const double value = constant_C2().value;
    return value;
}

double h_k_sato_tate(int k, double t) {
    check_k(k);
    if (!(t >= 0.0)) throw DomainError("h_k_sato_tate: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (t < kSmallT) return h_k_small(k, t);
    if (t <= 1.0) return h_k_moderate(k, t);
    return t + h_k_minus_t(k, t);
}

ConstantReport constant_A_k(int k) {
    check_k(k);
    if (k > 12) throw DomainError("constant_A_k: supported for 1 <= k <= 12");
    return assemble(
        "A_k(" + std::to_string(k) + ")", [k](double t) { return h_k_sato_tate(k, t) / (t * t); },
        [k](double t) { return h_k_minus_t(k, t); });
}

}  // namespace eulerprod
