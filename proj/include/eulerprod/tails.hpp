#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "eulerprod/moments.hpp"

namespace eulerprod {

struct TailEstimate {
    double tau = 0.0;
    double A = 0.0;
    double scale_exponent = 1.0;  // d, k + 1 or N
    double b = 1.0;
    double phi = 0.0;
    double lower = std::numeric_limits<double>::quiet_NaN();
    double upper = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> caveats;
};

/// phi = exp(-e^{tau - A}/tau); the (1 + O(1/sqrt tau)) factor is dropped and
/// noted in caveats. DomainError for tau <= 0.
TailEstimate tail_closed_form(double A, double tau);

/// tau = log(rd) + A, and its inverse r = e^{tau - A}/d.
double saddle_tau_for_r(double A, int d, double r);
double saddle_r_for_tau(double A, int d, double tau);

/// c / sqrt(log r), the proof's window half-width; needs r > e... falls back to c for log r < 1.
double default_delta(double r, double c = 1.0);

/// r -> log E|L|^r.
using LogMomentFn = std::function<double(double r)>;

struct TailBracket {
    double tau = 0.0;
    double delta = 0.0;
    double lower = 0.0;
    double upper = 1.0;
    double log_lower = -std::numeric_limits<double>::infinity();  // survive underflow of lower/upper
    double log_upper = 0.0;
    double s_lower = 0.0;  // moment order (in units of rd) used for each bound
    double s_upper = 0.0;
    std::size_t moment_calls = 0;
};

/// Bounds on Phi(tau) = P(|L| > (e^gamma tau)^d) from moments alone, using
/// rd int_0^inf Phi(t) t^{rd-1} dt = E|L|^r e^{-gamma rd}:
///   upper: Chernoff, min_s E(Y^s) tau^{-s} with Y = e^{-gamma} |L|^{1/d};
///   lower: the window [tau, tau + delta] must carry what the moment leaves
///          after Chernoff bounds on [0, tau] (order s' < s) and
///          [tau + delta, inf) (order S > s); Phi is non-increasing, so
///          Phi(tau) >= window mass / ((tau + delta)^s - tau^s).
/// DomainError (bracket failure) if no order gives a positive window.
TailBracket tail_bracket_from_moments(const LogMomentFn& log_moment, int d, double tau, double delta);

struct EmpiricalTail {
    double phi_hat = 0.0;
    double lower = 0.0;  // Wilson score interval at 3 sigma
    double upper = 1.0;
    std::size_t hits = 0;
    std::size_t n = 0;
    double log_threshold = 0.0;
};

/// Fraction of log|L| samples above d (gamma + log tau).
EmpiricalTail empirical_tail(std::span<const double> log_abs, int d, double tau);
/// b-form: above log b + N (gamma + log tau).
EmpiricalTail empirical_tail_b(std::span<const double> log_abs, double b, double N, double tau);

/// C + M/N - log N. DomainError if N <= 0.
double composite_constant(double C, const PsiDistribution& psi);

/// Header line "tau,phi,lower,upper" then one row per estimate.
void write_tail_csv(std::ostream& out, std::span<const TailEstimate> rows);

}  // namespace eulerprod
