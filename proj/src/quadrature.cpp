#include "eulerprod/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "eulerprod/error.hpp"

namespace eulerprod {

namespace {

// Kronrod abscissae and weights (QUADPACK qk15); odd indices are the Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value, error, resabs;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

    const double ahalf = std::abs(half);
    resk *= half;
    resabs *= ahalf;
    resasc *= ahalf;
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
    if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
    return {a, b, resk, err, resabs, depth};
}

IntegralResult integrate_finite(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
    if (a == b) return {};
    std::priority_queue<Segment> active;
    std::vector<Segment> frozen;
    std::size_t evals = 15;
    active.push(gk15(f, a, b, 0));

    auto totals = [&](double& value, double& error, double& resabs) {
        value = error = resabs = 0.0;
        // Summing a copy keeps the heap intact; the number of live segments stays small.
        auto copy = active;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            resabs += copy.top().resabs;
            copy.pop();
        }
        for (const auto& s : frozen) {
            value += s.value;
            error += s.error;
            resabs += s.resabs;
        }
    };

    double value = active.top().value;
    double error = active.top().error;
    double resabs = active.top().resabs;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::size_t since_resum = 0;

    while (true) {
        const double target = std::max({opts.abs_tol, opts.rel_tol * std::abs(value), 100 * eps * resabs});
        if (error <= target) break;
        if (active.empty()) {
            throw BudgetExceeded("integrate_adaptive: recursion depth cap reached before tolerance", value,
                                 error);
        }
        if (evals + 30 > opts.max_evaluations) {
            throw BudgetExceeded("integrate_adaptive: evaluation budget exceeded", value, error);
        }
        const Segment worst = active.top();
        active.pop();
        if (worst.depth >= opts.max_depth) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid, worst.depth + 1);
        const Segment right = gk15(f, mid, worst.b, worst.depth + 1);
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        resabs += left.resabs + right.resabs - worst.resabs;
        active.push(left);
        active.push(right);
        // Incremental updates drift; recompute the totals now and then.
        if (++since_resum == 64) {
            since_resum = 0;
            totals(value, error, resabs);
        }
    }
    totals(value, error, resabs);
    return {value, error, evals};
}

}  // namespace

IntegralResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
    if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0))
        throw InvalidArgument("integrate_adaptive: tolerance must be positive");
    if (std::isnan(a) || std::isnan(b) || std::isinf(a))
        throw InvalidArgument("integrate_adaptive: invalid limits");
    if (!std::isinf(b)) {
        if (b < a) {
            IntegralResult r = integrate_finite(f, b, a, opts);
            r.value = -r.value;
            return r;
        }
        return integrate_finite(f, a, b, opts);
    }
    if (b < 0) throw InvalidArgument("integrate_adaptive: lower limit must be finite, upper may be +inf");

    if (a <= 0.0) {
        QuadratureOptions half = opts;
        half.abs_tol = opts.abs_tol * 0.5;
        const IntegralResult head = integrate_finite(f, a, 1.0, half);
        const IntegralResult tail = integrate_adaptive(f, 1.0, b, half);
        return {head.value + tail.value, head.abs_error_estimate + tail.abs_error_estimate,
                head.evaluations + tail.evaluations};
    }
    // t = 1/u, dt = -du/u^2
    const Integrand g = [&f](double u) { return f(1.0 / u) / (u * u); };
    return integrate_finite(g, 0.0, 1.0 / a, opts);
}

IntegralResult integrate_peaked(const Integrand& f, double a, double b, std::span<const double> peaks,
                                double sharpness, const QuadratureOptions& opts) {
    if (!(b > a)) throw InvalidArgument("integrate_peaked: need a < b");
    std::vector<double> cuts = {a, b};
    const double span = b - a;
    const double floor_width = 0.1 / std::sqrt(1.0 + std::max(0.0, sharpness));
    for (const double peak : peaks) {
        if (peak < a || peak > b) continue;
        cuts.push_back(peak);
        for (double w = 0.5 * span; w > floor_width; w *= 0.5) {
            if (peak - w > a) cuts.push_back(peak - w);
            if (peak + w < b) cuts.push_back(peak + w);
        }
        if (peak - floor_width > a) cuts.push_back(peak - floor_width);
        if (peak + floor_width < b) cuts.push_back(peak + floor_width);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Pieces are integrated to a relative tolerance, then the error budget is checked on the sum.
    QuadratureOptions piece = opts;
    piece.abs_tol = std::numeric_limits<double>::min();
    piece.rel_tol = std::max(opts.rel_tol, 1e-13);
    IntegralResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const IntegralResult r = integrate_finite(f, cuts[i], cuts[i + 1], piece);
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.evaluations += r.evaluations;
    }
    return total;
}

}  // namespace eulerprod
