#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "eulerprod/constants.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/moments.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/quadrature.hpp"
#include "eulerprod/tails.hpp"

using namespace eulerprod;

namespace {

// Y with P(Y > t) = exp(-lambda t^2): E Y^s = lambda^{-s/2} Gamma(1 + s/2).
struct Rayleigh {
    double lambda;
    double phi(double t) const { return std::exp(-lambda * t * t); }
    LogMomentFn log_moment() const {
        return [l = lambda](double r) { return kEulerGamma * r - 0.5 * r * std::log(l) + std::lgamma(1 + 0.5 * r); };
    }
};

// Phi0(t) = exp(-e^t/t) for t >= 1, flat below: E Y^s = Phi0(1) + s int_1^inf Phi0(t) t^{s-1} dt.
double phi0(double t) { return t < 1 ? std::exp(-std::numbers::e) : std::exp(-std::exp(t) / t); }

double phi0_log_moment(double r) {
    const double s = r;
    auto lg = [&](double u) { const double t = std::exp(u); return -std::exp(t) / t + s * u; };
    const double hi = std::log(std::log(s + 3) + 3) + 1.5;
    double m = lg(0), um = 0;
    for (int i = 0; i <= 4000; ++i) {
        const double u = hi * i / 4000;
        if (lg(u) > m) m = lg(u), um = u;
    }
    QuadratureOptions o;
    o.rel_tol = 1e-12;
    o.abs_tol = 1e-300;
    const double peaks[] = {um};
    const double v = integrate_peaked([&](double u) { return std::exp(lg(u) - m); }, 0, hi, peaks, s * std::exp(um), o).value;
    const double l1 = std::log(s) + m + std::log(v), l0 = -std::numbers::e;
    return kEulerGamma * s + std::max(l0, l1) + std::log1p(std::exp(-std::abs(l0 - l1)));
}

}  // namespace

TEST_CASE("closed-form tail") {
    const auto t = tail_closed_form(C1_value(), 3);
    CHECK(t.phi == doctest::Approx(std::exp(-std::exp(3 - C1_value()) / 3)).epsilon(1e-15));
    CHECK_FALSE(t.caveats.empty());
    CHECK(tail_closed_form(0.5, 1.0).phi > tail_closed_form(0.5, 2.0).phi);
    CHECK_THROWS_AS(tail_closed_form(0.5, 0.0), DomainError);
}

TEST_CASE("saddle point and window") {
    CHECK(saddle_tau_for_r(0.3, 2, 50) == doctest::Approx(std::log(100.0) + 0.3));
    CHECK(saddle_r_for_tau(0.3, 2, saddle_tau_for_r(0.3, 2, 50)) == doctest::Approx(50));
    CHECK(default_delta(std::exp(4.0)) == doctest::Approx(0.5));
    CHECK(default_delta(2.0) == 1.0);
    CHECK_THROWS_AS(saddle_tau_for_r(0.3, 1, 0), DomainError);
}

TEST_CASE("bracket contains a known tail whenever it succeeds") {
    int successes = 0;
    // light tails only resolve once the tilted law is narrower than the window
    for (double lambda : {2.0, 8.0, 20.0, 50.0}) {
        const Rayleigh y{lambda};
        for (double tau : {0.5, 1.0, 1.5, 2.0, 3.0}) {
            for (double delta : {0.3, 0.6, 0.9}) {
                try {
                    const auto b = tail_bracket_from_moments(y.log_moment(), 1, tau, delta);
                    CHECK(b.lower <= y.phi(tau));
                    CHECK(y.phi(tau) <= b.upper);
                    CHECK(b.lower > 0);
                    ++successes;
                } catch (const DomainError&) {
                }
            }
        }
    }
    CHECK(successes > 20);
}

TEST_CASE("bracket on a double-exponential tail") {
    for (double tau : {4.0, 6.0}) {
        const auto b = tail_bracket_from_moments(phi0_log_moment, 1, tau, 0.9);
        CHECK(b.lower <= phi0(tau));
        CHECK(phi0(tau) <= b.upper);
        CHECK(b.log_lower <= std::log(phi0(tau)));
        CHECK(std::log(phi0(tau)) <= b.log_upper);
        CHECK(b.log_upper == doctest::Approx(std::log(b.upper)));
        // Chernoff is within a couple of orders of magnitude of the truth
        CHECK(std::log(b.upper / phi0(tau)) < 5);
    }
}

TEST_CASE("bracket failures are reported") {
    CHECK_THROWS_AS(tail_bracket_from_moments(phi0_log_moment, 1, 2.0, 0.5), DomainError);
    CHECK_THROWS_AS(tail_bracket_from_moments(phi0_log_moment, 1, 3.0, 1.5), DomainError);
    CHECK_THROWS_AS(tail_bracket_from_moments(phi0_log_moment, 0, 3.0, 0.5), DomainError);
}

TEST_CASE("empirical tail and Wilson interval") {
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) xs.push_back(i / 1000.0);
    const double tau = std::exp(0.9) / std::exp(kEulerGamma);  // threshold log = 0.9
    const auto e = empirical_tail(xs, 1, tau);
    CHECK(e.hits == 99);
    CHECK(e.phi_hat == doctest::Approx(0.099));
    const double n = 1000, p = 0.099, z = 3;
    const double c = (p + z * z / (2 * n)) / (1 + z * z / n);
    const double h = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
    CHECK(e.lower == doctest::Approx(c - h));
    CHECK(e.upper == doctest::Approx(c + h));
    const auto none = empirical_tail(xs, 1, 100.0);
    CHECK(none.hits == 0);
    CHECK(none.lower == 0.0);
    CHECK(none.upper > 0.0);
    CHECK(empirical_tail_b(xs, std::exp(0.5), 1.0, tau).hits == std::size_t(std::count_if(xs.begin(), xs.end(), [](double x) { return x > 1.4; })));
    CHECK_THROWS_AS(empirical_tail(std::vector<double>{}, 1, 2.0), InvalidArgument);
    CHECK_THROWS_AS(empirical_tail(xs, 1, -1.0), DomainError);
}

TEST_CASE("composite constant") {
    CHECK(composite_constant(C1_value(), PsiDistribution::dirac()) == C1_value());
    CHECK(composite_constant(C2_value(), PsiDistribution::dirac()) == C2_value());
    const auto m = psi_moments(PsiDistribution::semicircle());
    CHECK(composite_constant(C1_value(), PsiDistribution::semicircle()) ==
          doctest::Approx(C1_value() + m.M / m.N - std::log(8 / (3 * std::numbers::pi))).epsilon(1e-12));
}

TEST_CASE("tail csv") {
    std::ostringstream s;
    const std::vector<TailEstimate> rows{tail_closed_form(0.5, 2.0)};
    write_tail_csv(s, rows);
    CHECK(s.str().rfind("tau,phi,lower,upper\n2,", 0) == 0);
}
