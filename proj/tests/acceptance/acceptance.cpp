// Acceptance checks 1-11. `acceptance` runs all of them, `acceptance 4 6` a
// selection. One PASS/FAIL line per criterion; exit status 1 if any failed.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "eulerprod/arith.hpp"
#include "eulerprod/constants.hpp"
#include "eulerprod/models.hpp"
#include "eulerprod/moments.hpp"
#include "eulerprod/parallel.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/special.hpp"
#include "eulerprod/tails.hpp"

using namespace eulerprod;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const char* fmt, auto... args) {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        if (!detail.empty()) detail += "; ";
        detail += buf;
        pass = pass && ok;
    }
};

struct Criterion {
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
};

// I1 by its power series, independent of the library's Bessel code.
double i1_series(double t) {
    double term = t / 2, sum = term;
    for (int m = 1; m < 400; ++m) {
        term *= (t / 2) * (t / 2) / (double(m) * (m + 1));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

Outcome c1() {
    Outcome o;
    const double v = constant_C1().value;
    o.require(std::abs(v - 0.8187) <= 5e-4, "C1 = %.16f (target 0.8187 +- 5e-4)", v);
    return o;
}

Outcome c2() {
    Outcome o;
    const double a = constant_A_X(make_model("rademacher")).value, c1 = constant_C1().value;
    const double b = constant_A_X(make_model("unit_circle")).value, c2 = constant_C2().value;
    o.require(std::abs(a - c1) <= 1e-6, "|A_X(signs) - C1| = %.2e", std::abs(a - c1));
    o.require(std::abs(b - c2) <= 1e-6, "|A_X(unit_circle) - C2| = %.2e", std::abs(b - c2));
    return o;
}

Outcome c3() {
    Outcome o;
    for (double t : {0.1, 1.0, 5.0, 20.0}) {
        const double err = std::abs(h_k_sato_tate(1, t) - std::log(2 * i1_series(t) / t));
        o.require(err <= 1e-8, "t=%g err %.1e", t, err);
    }
    return o;
}

Outcome c4() {
    Outcome o;
    const RandomModel m = make_model("unit_circle");
    const auto samples = sample_log_abs_batch(m, 101, 200000, 1, default_threads());
    const auto emp = empirical_moment(samples, 4);
    const double mc = std::exp(emp.log_moment), se = emp.relative_std_error * mc;
    const double exact = std::exp(exact_moment_log(m, 4, 101).log_moment);
    const double z = std::abs(mc - exact) / se;
    o.require(z <= 3, "empirical %.6f exact %.6f, %.2f standard errors", mc, exact, z);
    return o;
}

Outcome c5() {
    Outcome o;
    const RandomModel m = make_model("unit_circle");
    std::vector<double> gaps;
    for (double r : {1e3, 1e4}) {
        const double L = std::log(r);
        const double lm = exact_moment_log(m, r, std::pow(r, 1.5), LocalMethod::exact, default_threads()).log_moment;
        const double g = (lm - r * std::log(L) - kEulerGamma * r) * L / r;
        const double gap = std::abs(g - (C2_value() - 1));
        gaps.push_back(gap);
        o.require(gap <= 3 / L, "r=%g g=%.5f gap %.4f (bound %.4f)", r, g, gap, 3 / L);
    }
    o.require(gaps[1] < gaps[0], "gap shrinks %.4f -> %.4f", gaps[0], gaps[1]);
    return o;
}

Outcome c6() {
    Outcome o;
    const auto samples = sample_log_abs_batch(make_model("unit_circle"), 1e4, 1000000, 1, default_threads());
    for (double tau : {2.5, 3.0, 3.5}) {
        const auto e = empirical_tail(samples, 1, tau);
        const double closed = tail_closed_form(C2_value(), tau).phi;
        const double ratio = e.hits ? std::log(e.phi_hat) / std::log(closed) : INFINITY;
        o.require(ratio >= 0.6 && ratio <= 1.5, "tau=%g empirical %.3e (%zu hits) closed %.3e log-ratio %.3f", tau,
                  e.phi_hat, e.hits, closed, ratio);
    }
    return o;
}

Outcome c7() {
    Outcome o;
    const auto z = zeta_empirical_moment(1e6, 50, 2, 100000, 1, default_threads());
    const CoefficientProvider ones = [](std::uint32_t, int) { return std::complex<double>(1, 0); };
    const double diag = diagonal_moment(ones, 50, 2).value;
    const double rel = std::abs(z.mean / diag - 1);
    o.require(rel <= 0.02, "mean |zeta|^4 = %.5f (se %.4f), diagonal %.5f, relative gap %.4f", z.mean, z.std_error,
              diag, rel);
    return o;
}

Outcome c8() {
    Outcome o;
    const auto fam = fundamental_discriminants(1e6);
    const auto s3 = character_square_sum(fam, 3);
    o.require(s3.relative_gap <= 0.01, "sum chi_d(9) = %.0f vs %.1f, gap %.2e", s3.sum, s3.main_term, s3.relative_gap);
    const double main = 6 / (M_PI * M_PI) * 1e6;
    const double gap = std::abs(fam.discs.size() - main) / main;
    o.require(gap <= 0.02, "count %zu vs %.1f, gap %.2e", fam.discs.size(), main, gap);
    return o;
}

Outcome c9() {
    Outcome o;
    auto gap = [](double x) { return std::abs(mertens_log_sum(x) - std::log(std::log(x)) - kEulerGamma); };
    const double g4 = gap(1e4), g6 = gap(1e6);
    o.require(g6 <= 0.01, "discrepancy at 1e6 = %.2e", g6);
    o.require(g6 < g4, "decreases from %.2e at 1e4", g4);
    return o;
}

Outcome c10() {
    Outcome o;
    for (auto [flavor, C, label] : {std::tuple{PsiFlavor::unit_circle, C2_value(), "C2"},
                                    std::tuple{PsiFlavor::signs, C1_value(), "C1"}}) {
        for (double r : {1e3, 1e6}) {
            const double L = std::log(r);
            const double main = r * std::log(L) + kEulerGamma * r + r / L * (C - 1);
            const double got = asymptotic_moment_log_psi(PsiDistribution::dirac(), flavor, r, 1.0).log_moment;
            const double rel = std::abs(got - main) / std::abs(main);
            o.require(rel <= 1e-12, "%s r=%g relative difference %.1e", label, r, rel);
        }
        const double cc = composite_constant(C, PsiDistribution::dirac());
        o.require(cc == C, "composite_constant(%s, dirac) - %s = %.1e", label, label, cc - C);
    }
    return o;
}

Outcome c11() {
    Outcome o;
    // Lipschitz-1 grids for h
    double worst = 0;
    for (double t = 0; t < 60; t += 0.05) {
        const double d = 0.05;
        worst = std::max(worst, std::abs(log_cosh(t + d) - log_cosh(t)) / d);
        worst = std::max(worst, std::abs(log_bessel_i0(t + d) - log_bessel_i0(t)) / d);
        for (int k = 1; k <= 4; ++k) worst = std::max(worst, std::abs(h_k_sato_tate(k, t + d) - h_k_sato_tate(k, t)) / d);
    }
    o.require(worst <= 1 + 1e-12, "max difference quotient of h %.12f", worst);

    // log-convexity of moments in r
    int convex_bad = 0;
    for (const char* name : {"unit_circle", "sym2", "rademacher"}) {
        const RandomModel m = make_model(name);
        std::vector<double> rs{0.5, 1, 2, 3, 5, 8, 13, 21, 34}, lm;
        for (double r : rs) lm.push_back(exact_moment_log(m, r, 3000).log_moment);
        for (std::size_t i = 1; i + 1 < rs.size(); ++i) {
            const double w = (rs[i] - rs[i - 1]) / (rs[i + 1] - rs[i - 1]);
            convex_bad += lm[i] > (1 - w) * lm[i - 1] + w * lm[i + 1] + 1e-12;
            convex_bad += !(lm[i] > lm[i - 1]);
        }
    }
    o.require(convex_bad == 0, "log-convexity/monotonicity violations %d", convex_bad);

    // Kronecker symbol
    const auto fam = fundamental_discriminants(1e4);
    int kron_bad = 0;
    for (int i = 0; i < 10000; ++i) {
        CounterRng rng(2024, i);
        const std::int64_t d = fam.discs[rng.next() % fam.discs.size()];
        const std::uint64_t m = 1 + rng.next() % 1000000, n = 1 + rng.next() % 1000000;
        kron_bad += kronecker_symbol(d, m * n) != kronecker_symbol(d, m) * kronecker_symbol(d, n);
        kron_bad += kronecker_symbol(d, n + std::uint64_t(std::llabs(d))) != kronecker_symbol(d, n);
        kron_bad += (kronecker_symbol(d, n) == 0) != (std::gcd(std::uint64_t(std::llabs(d)), n) > 1);
    }
    o.require(kron_bad == 0, "Kronecker violations %d in 10^4 cases", kron_bad);

    // symk positivity and conjugate pairing
    int symk_bad = 0;
    for (int k = 1; k <= 10; ++k)
        for (double th = 0; th <= M_PI + 1e-12; th += M_PI / 64)
            for (std::uint32_t p : {2u, 3u, 5u, 97u}) {
                symk_bad += !(symk_local_factor(th, k, p) > 0);
                symk_bad += !(std::abs(symk_local_factor_complex(th, k, p).imag()) < 1e-12);
            }
    o.require(symk_bad == 0, "symk violations %d", symk_bad);

    // bit-reproducible seeded batches, independent of thread count
    const RandomModel m = make_model("sym2");
    const auto a = sample_log_abs_batch(m, 2000, 5000, 77, 1);
    const auto b = sample_log_abs_batch(m, 2000, 5000, 77, 4);
    const auto c = sample_log_abs_batch(m, 2000, 5000, 77, 1);
    o.require(a == b && a == c, "seeded batches identical: %s", a == b && a == c ? "yes" : "no");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {"C1 reproduces 0.8187", 1, c1},
        {"constant cross-paths", 5, c2},
        {"Sato-Tate identity h_1 = log(2 I_1(t)/t)", 1, c3},
        {"Monte Carlo vs exact product", 60, c4},
        {"moment asymptotic convergence", 600, c5},
        {"tail shape", 900, c6},
        {"diagonal moment identity", 300, c7},
        {"quadratic family density", 120, c8},
        {"Mertens calibration", 5, c9},
        {"collapse checks", 1e9, c10},
        {"invariant suites", 1e9, c11},
    };
    std::vector<int> pick;
    for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
    if (pick.empty())
        for (int i = 1; i <= int(all.size()); ++i) pick.push_back(i);

    bool ok = true;
    for (const int i : pick) {
        if (i < 1 || i > int(all.size())) {
            std::printf("criterion %d: FAIL unknown criterion\n", i);
            ok = false;
            continue;
        }
        const Criterion& c = all[i - 1];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = out.pass && in_time;
        ok = ok && pass;
        if (c.budget_s < 1e8)
            std::printf("criterion %d: %s %s: %s [%.2f s, limit %g s]\n", i, pass ? "PASS" : "FAIL", c.title,
                        out.detail.c_str(), secs, c.budget_s);
        else
            std::printf("criterion %d: %s %s: %s [%.2f s]\n", i, pass ? "PASS" : "FAIL", c.title, out.detail.c_str(),
                        secs);
        std::fflush(stdout);
    }
    return ok ? 0 : 1;
}
