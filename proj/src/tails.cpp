#include "eulerprod/tails.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "eulerprod/error.hpp"
#include "eulerprod/primes.hpp"

namespace eulerprod {

namespace {

// log(e^a - e^b) for a > b.
double log_diff_exp(double a, double b) { return a + std::log(-std::expm1(b - a)); }

EmpiricalTail count_above(std::span<const double> log_abs, double threshold) {
    if (log_abs.empty()) throw InvalidArgument("empirical_tail: empty batch");
    EmpiricalTail out;
    out.n = log_abs.size();
    out.log_threshold = threshold;
    for (const double x : log_abs) out.hits += x > threshold;
    const double n = static_cast<double>(out.n);
    const double p = out.hits / n;
    out.phi_hat = p;
    constexpr double z = 3.0;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    out.lower = std::max(0.0, centre - half);
    out.upper = std::min(1.0, centre + half);
    return out;
}

}  // namespace

TailEstimate tail_closed_form(double A, double tau) {
    if (!(tau > 0.0)) throw DomainError("tail_closed_form: tau must be > 0");
    TailEstimate t;
    t.tau = tau;
    t.A = A;
    t.phi = std::exp(-std::exp(tau - A) / tau);
    t.caveats.push_back("main term only: the factor (1 + O(1/sqrt(tau))) in the exponent is unquantified");
    return t;
}

double saddle_tau_for_r(double A, int d, double r) {
    if (!(r > 0.0)) throw DomainError("saddle_tau_for_r: r must be > 0");
    return std::log(r * d) + A;
}

double saddle_r_for_tau(double A, int d, double tau) { return std::exp(tau - A) / d; }

double default_delta(double r, double c) {
    const double L = std::log(r);
    return L > 1.0 ? c / std::sqrt(L) : c;
}

TailBracket tail_bracket_from_moments(const LogMomentFn& log_moment, int d, double tau, double delta) {
    if (!(tau > 0.0)) throw DomainError("tail_bracket_from_moments: tau must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("tail_bracket_from_moments: delta must be in (0, 1)");
    if (d < 1) throw DomainError("tail_bracket_from_moments: d must be >= 1");

    TailBracket out;
    out.tau = tau;
    out.delta = delta;
    // mu(s) = log E Y^s, Y = e^{-gamma} |L|^{1/d}.
    auto mu = [&](double s) {
        ++out.moment_calls;
        return log_moment(s / d) - kEulerGamma * s;
    };
    const double lt = std::log(tau), lt2 = std::log(tau + delta);

    // Chernoff exponent mu(s) - s log tau is convex in s: walk up a log-grid until it rises.
    constexpr double kStep = 0.05;
    std::vector<double> vs, mus;
    auto push = [&](double v) {
        vs.push_back(v);
        mus.push_back(mu(std::exp(v)));
    };
    const double v_lo = std::log(0.05), v_cap = std::log(1e7);
    push(v_lo);
    std::size_t best_i = 0;
    for (int rising = 0; rising < 20 && vs.back() < v_cap;) {
        push(vs.back() + kStep);
        const std::size_t i = vs.size() - 1;
        if (mus[i] - std::exp(vs[i]) * lt < mus[best_i] - std::exp(vs[best_i]) * lt) {
            best_i = i;
            rising = 0;
        } else {
            ++rising;
        }
    }
    const double v_star = vs[best_i];
    // Extend the grid well past the optimum: the envelope above tau + delta needs large orders.
    while (vs.back() < std::min(v_cap, v_star + 4.0)) push(vs.back() + kStep);

    const double log_upper = std::min(0.0, mus[best_i] - std::exp(v_star) * lt);
    out.log_upper = log_upper;
    out.upper = std::exp(log_upper);
    out.s_upper = std::exp(v_star);

    // Pointwise envelope log Phi(e^u) <= min(0, min_i mu_i - s_i u): a concave piecewise-linear
    // function of u, so its lower hull can be integrated against e^{su} in closed form.
    struct Line {
        double a, b;  // a + b u
    };
    std::vector<Line> hull;
    auto cross = [](const Line& l, const Line& m) { return (m.a - l.a) / (l.b - m.b); };
    auto add_line = [&](Line m) {
        while (!hull.empty() && hull.back().b == m.b) {
            if (hull.back().a <= m.a) return;
            hull.pop_back();
        }
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], m) <= cross(hull[hull.size() - 2], hull.back()))
            hull.pop_back();
        hull.push_back(m);
    };
    add_line({0.0, 0.0});
    for (std::size_t i = 0; i < vs.size(); ++i) add_line({mus[i], -std::exp(vs[i])});
    // hull[j] is active on [knots[j], knots[j + 1]].
    std::vector<double> knots{-std::numeric_limits<double>::infinity()};
    for (std::size_t j = 1; j < hull.size(); ++j) knots.push_back(cross(hull[j - 1], hull[j]));
    knots.push_back(std::numeric_limits<double>::infinity());

    // s int_lo^hi exp(env(u) + s u - ms) du, the envelope's share of E Y^s / e^{ms}.
    auto envelope_mass = [&](double s, double ms, double lo, double hi) {
        double total = 0.0;
        for (std::size_t j = 0; j < hull.size(); ++j) {
            const double a = std::max(lo, knots[j]), b = std::min(hi, knots[j + 1]);
            if (!(a < b)) continue;
            const double c = s + hull[j].b;
            const double base = hull[j].a - ms;
            if (c > 0.0)
                total += s * std::exp(base + c * b) * -std::expm1(-c * (b - a)) / c;
            else if (c < 0.0)
                total += s * std::exp(base + c * a) * -std::expm1(c * (b - a)) / -c;
            else
                total += s * (b - a) * std::exp(base);
        }
        return total;
    };
    const double s_max = std::exp(vs.back());

    // For order s: mass outside [tau, tau + delta] relative to E Y^s, bounded with the envelope;
    // the window then carries at least the rest, and Phi(tau) >= window / ((tau+delta)^s - tau^s).
    auto lower_log = [&](std::size_t i) {
        const double s = std::exp(vs[i]);
        const double ms = mus[i];
        const double below = envelope_mass(s, ms, -std::numeric_limits<double>::infinity(), lt);
        const double above = envelope_mass(s, ms, lt2, std::numeric_limits<double>::infinity());
        const double w = 1.0 - below - above;
        if (!(w > 0.0)) return -std::numeric_limits<double>::infinity();
        return ms + std::log(w) - log_diff_exp(s * lt2, s * lt);
    };
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (std::exp(vs[i]) > s_max * std::exp(-1.0)) break;
        const double lv = lower_log(i);
        if (lv > best) {
            best = lv;
            out.s_lower = std::exp(vs[i]);
        }
    }
    if (!std::isfinite(best))
        throw DomainError("tail_bracket_from_moments: bracket failure, no moment order leaves a positive window");
    // Both bounds come from the same moments; a lower bound above Chernoff means they are inconsistent.
    if (best > log_upper + 1e-9 * (1.0 + std::abs(log_upper)))
        throw DomainError("tail_bracket_from_moments: moments inconsistent (lower bound exceeds Chernoff bound)");
    out.log_lower = std::min(log_upper, best);
    out.lower = std::min(out.upper, std::exp(best));
    return out;
}

EmpiricalTail empirical_tail(std::span<const double> log_abs, int d, double tau) {
    if (!(tau > 0.0)) throw DomainError("empirical_tail: tau must be > 0");
    return count_above(log_abs, d * (kEulerGamma + std::log(tau)));
}

EmpiricalTail empirical_tail_b(std::span<const double> log_abs, double b, double N, double tau) {
    if (!(tau > 0.0) || !(b > 0.0)) throw DomainError("empirical_tail_b: tau and b must be > 0");
    return count_above(log_abs, std::log(b) + N * (kEulerGamma + std::log(tau)));
}

double composite_constant(double C, const PsiDistribution& psi) {
    const PsiMoments m = psi_moments(psi);
    if (!(m.N > 0.0)) throw DomainError("composite_constant: N must be > 0");
    return C + m.M / m.N - std::log(m.N);
}

void write_tail_csv(std::ostream& out, std::span<const TailEstimate> rows) {
    out << "tau,phi,lower,upper\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.tau, r.phi, r.lower, r.upper);
        out << buf;
    }
}

}  // namespace eulerprod
