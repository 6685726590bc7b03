#include "eulerprod/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "eulerprod/error.hpp"
#include "eulerprod/parallel.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/quadrature.hpp"
#include "eulerprod/special.hpp"

namespace eulerprod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesT = 1e-3;

double wrap_angle(double x) { return std::remainder(x, 2.0 * kPi); }

double quadratic_weight(std::uint32_t p) { return p / (2.0 * (p + 1.0)); }

double custom_log_mgf(const CustomModelSpec& spec, double t) {
    if (spec.log_mgf) return spec.log_mgf(t);
    const double m = spec.mgf(t);
    if (!(m > 0) || !std::isfinite(m))
        throw DomainError("custom model: mgf(" + std::to_string(t) + ") = " + std::to_string(m) +
                          " is not finite and positive; supply log_mgf");
    return std::log(m);
}

// The law of Re X, either as atoms or as an angle integral
//   E F(Re X) = int_lo^hi F(value(phi)) weight(phi) dphi,
// with deficit(phi) = 1 - value(phi) supplied in a cancellation-free form and
// deficit ~ curvature (phi - peak)^2 near each peak.
struct RealPartLaw {
    std::vector<std::array<double, 2>> atoms;  // {weight, value}
    double lo = 0.0, hi = 0.0;
    std::function<double(double)> weight, value, deficit;
    std::vector<double> peaks;
    double curvature = 1.0;
    std::function<double(double)> log_mgf;  // custom models only
    std::array<double, 5> moments{};        // E (Re X)^n, filled lazily
    bool have_moments = false;
};

RealPartLaw make_law(const RandomModel& model) {
    RealPartLaw law;
    switch (model.kind) {
        case ModelKind::rademacher:
            law.atoms = {{0.5, 1.0}, {0.5, -1.0}};
            break;
        case ModelKind::unit_circle:
            // theta uniform on [-pi, pi]; Re X = cos theta is even, so fold onto [0, pi].
            law.lo = 0.0;
            law.hi = kPi;
            law.weight = [](double) { return 1.0 / kPi; };
            law.value = [](double phi) { return std::cos(phi); };
            law.deficit = [](double phi) {
                const double s = std::sin(0.5 * phi);
                return 2.0 * s * s;
            };
            law.peaks = {0.0};
            law.curvature = 0.5;
            break;
        case ModelKind::sato_tate_symk: {
            const int k = model.k;
            law.lo = 0.0;
            law.hi = kPi;
            law.weight = [](double phi) {
                const double s = std::sin(phi);
                return 2.0 / kPi * s * s;
            };
            law.value = [k](double phi) {
                double s = 0.0;
                for (int j = 0; j <= k; ++j) s += std::cos((k - 2 * j) * phi);
                return s / (k + 1);
            };
            law.deficit = [k](double phi) {
                double s = 0.0;
                for (int j = 0; j <= k; ++j) {
                    const double v = std::sin(0.5 * (k - 2 * j) * phi);
                    s += v * v;
                }
                return 2.0 * s / (k + 1);
            };
            law.peaks = {0.0};
            if (k % 2 == 0) law.peaks.push_back(kPi);
            law.curvature = k * (k + 2) / 6.0;
            break;
        }
        case ModelKind::custom: {
            auto spec = model.custom;
            if (!spec || !spec->mgf) throw InvalidArgument("custom model has no mgf");
            law.log_mgf = [spec](double t) { return custom_log_mgf(*spec, t); };
            break;
        }
        case ModelKind::quadratic_char:
            throw DomainError("quadratic_char is p-dependent: Re X is not identically distributed (C3), no single law for Re X");
    }
    return law;
}

void fill_moments(RealPartLaw& law) {
    if (law.have_moments) return;
    law.moments = {1.0, 0.0, 0.0, 0.0, 0.0};
    if (!law.atoms.empty()) {
        for (const auto& [w, x] : law.atoms)
            for (int n = 1; n <= 4; ++n) law.moments[n] += w * std::pow(x, n);
    } else {
        QuadratureOptions opts;
        opts.abs_tol = 1e-15;
        for (int n = 1; n <= 4; ++n) {
            const Integrand g = [&law, n](double phi) { return std::pow(law.value(phi), n) * law.weight(phi); };
            law.moments[n] = integrate_adaptive(g, law.lo, law.hi, opts).value;
        }
    }
    law.have_moments = true;
}

double cumulant_series(const std::array<double, 5>& m, double t) {
    const double k1 = m[1];
    const double k2 = m[2] - m[1] * m[1];
    const double k3 = m[3] - 3 * m[1] * m[2] + 2 * std::pow(m[1], 3);
    const double k4 = m[4] - 4 * m[3] * m[1] - 3 * m[2] * m[2] + 12 * m[2] * m[1] * m[1] - 6 * std::pow(m[1], 4);
    return t * (k1 + t * (k2 / 2 + t * (k3 / 6 + t * k4 / 24)));
}

// log E e^{t Re X} - t for t > 1 (continuous laws), without forming e^t.
double law_log_mgf_minus_t(const RealPartLaw& law, double t) {
    if (!law.atoms.empty()) {
        double xmax = -std::numeric_limits<double>::infinity();
        for (const auto& a : law.atoms) xmax = std::max(xmax, a[1]);
        double s = 0.0;
        for (const auto& [w, x] : law.atoms) s += w * std::exp(t * (x - xmax));
        return t * (xmax - 1.0) + std::log(s);
    }
    const Integrand g = [&law, t](double phi) { return std::exp(-t * law.deficit(phi)) * law.weight(phi); };
    QuadratureOptions opts;
    opts.rel_tol = 1e-13;
    const IntegralResult r = integrate_peaked(g, law.lo, law.hi, law.peaks, t * law.curvature, opts);
    return std::log(r.value);
}

double law_log_mgf_impl(RealPartLaw& law, double t) {
    if (law.log_mgf) return law.log_mgf(t);
    if (t == 0.0) return 0.0;
    if (std::abs(t) < kSeriesT) {
        fill_moments(law);
        return cumulant_series(law.moments, t);
    }
    if (t <= 1.0) {
        if (!law.atoms.empty()) {
            double s = 0.0;
            for (const auto& [w, x] : law.atoms) s += w * std::expm1(t * x);
            return std::log1p(s);
        }
        const Integrand g = [&law, t](double phi) { return std::expm1(t * law.value(phi)) * law.weight(phi); };
        QuadratureOptions opts;
        opts.abs_tol = 1e-18;
        opts.rel_tol = 1e-13;
        return std::log1p(integrate_adaptive(g, law.lo, law.hi, opts).value);
    }
    return t + law_log_mgf_minus_t(law, t);
}

void require_p(const RandomModel& model, std::optional<std::uint32_t> p) {
    if (model.p_dependent && !p) throw InvalidArgument("model " + model.name() + " is p-dependent: a prime is required");
}

// Fills `roots` (size d) for one draw at prime p.
void draw_roots(const RandomModel& model, std::uint32_t p, CounterRng& rng, std::span<std::complex<double>> roots) {
    switch (model.kind) {
        case ModelKind::rademacher:
            roots[0] = rng.uniform() < 0.5 ? 1.0 : -1.0;
            return;
        case ModelKind::unit_circle:
            roots[0] = std::polar(1.0, kPi * (2.0 * rng.uniform() - 1.0));
            return;
        case ModelKind::sato_tate_symk: {
            const double theta = sato_tate_inverse_cdf(rng.uniform());
            for (int j = 0; j <= model.k; ++j) roots[j] = std::polar(1.0, wrap_angle((model.k - 2 * j) * theta));
            return;
        }
        case ModelKind::quadratic_char: {
            const double u = rng.uniform();
            const double w = quadratic_weight(p);
            roots[0] = u < w ? 1.0 : (u < 2 * w ? -1.0 : 0.0);
            return;
        }
        case ModelKind::custom:
            model.custom->sampler(p, rng, roots);
            return;
    }
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::rademacher: return "rademacher";
        case ModelKind::unit_circle: return "unit_circle";
        case ModelKind::sato_tate_symk: return "sato_tate_symk";
        case ModelKind::quadratic_char: return "quadratic_char";
        case ModelKind::custom: return "custom";
    }
    return "?";
}

std::string RandomModel::name() const {
    if (kind == ModelKind::sato_tate_symk) return "sato_tate_sym" + std::to_string(k);
    return to_string(kind);
}

RandomModel make_model(ModelKind kind, int k) {
    RandomModel m;
    m.kind = kind;
    switch (kind) {
        case ModelKind::rademacher:
        case ModelKind::unit_circle:
            break;
        case ModelKind::sato_tate_symk:
            if (k < 1) throw DomainError("sato_tate_symk needs k >= 1, got " + std::to_string(k));
            m.k = k;
            m.degree = k + 1;
            break;
        case ModelKind::quadratic_char:
            m.p_dependent = true;
            break;
        case ModelKind::custom:
            throw InvalidArgument("custom models need a sampler and mgf: use make_custom_model");
    }
    return m;
}

RandomModel make_model(const std::string& name, int k) {
    if (name == "rademacher" || name == "signs") return make_model(ModelKind::rademacher);
    if (name == "unit_circle") return make_model(ModelKind::unit_circle);
    if (name == "quadratic_char") return make_model(ModelKind::quadratic_char);
    if (name == "sato_tate_symk" || name == "sato_tate") return make_model(ModelKind::sato_tate_symk, k);
    for (const std::string prefix : {"sato_tate_sym", "sym"}) {
        if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
            try {
                std::size_t used = 0;
                const int kk = std::stoi(name.substr(prefix.size()), &used);
                if (used == name.size() - prefix.size()) return make_model(ModelKind::sato_tate_symk, kk);
            } catch (const std::logic_error&) {
            }
        }
    }
    throw InvalidArgument("unknown model kind '" + name + "'");
}

RandomModel make_custom_model(CustomModelSpec spec) {
    if (spec.degree < 1) throw InvalidArgument("custom model: degree must be >= 1");
    if (!spec.sampler || !spec.mgf) throw InvalidArgument("custom model: sampler and mgf are required");
    RandomModel m;
    m.kind = ModelKind::custom;
    m.degree = spec.degree;
    m.p_dependent = spec.p_dependent;
    m.custom = std::make_shared<const CustomModelSpec>(std::move(spec));
    return m;
}

double mgf(const RandomModel& model, double t, std::optional<std::uint32_t> p) {
    require_p(model, p);
    switch (model.kind) {
        case ModelKind::rademacher: return std::cosh(t);
        case ModelKind::unit_circle: return bessel_i0(t);
        case ModelKind::sato_tate_symk: return std::exp(log_mgf(model, t, p));
        case ModelKind::quadratic_char: {
            const double w = quadratic_weight(*p);
            return w * std::exp(t) + 1.0 / (*p + 1.0) + w * std::exp(-t);
        }
        case ModelKind::custom: return model.custom->mgf(t);
    }
    return 0.0;
}

double log_mgf(const RandomModel& model, double t, std::optional<std::uint32_t> p) {
    require_p(model, p);
    switch (model.kind) {
        case ModelKind::rademacher: return log_cosh(t);
        case ModelKind::unit_circle: return log_bessel_i0(t);
        case ModelKind::sato_tate_symk:
            // Re X is symmetric about 0 only for odd k (theta -> pi - theta).
            if (t < 0 && model.k % 2 == 0) throw DomainError("log_mgf: sato_tate_symk with even k needs t >= 0");
            return h_k_sato_tate(model.k, std::abs(t));
        case ModelKind::quadratic_char: {
            const double w = quadratic_weight(*p);
            const double a = std::abs(t);
            return a + std::log(w + std::exp(-a) / (*p + 1.0) + w * std::exp(-2.0 * a));
        }
        case ModelKind::custom: return custom_log_mgf(*model.custom, t);
    }
    return 0.0;
}

double law_log_mgf(const RandomModel& model, double t) {
    if (!(t >= 0.0)) throw DomainError("law_log_mgf: t must be >= 0");
    RealPartLaw law = make_law(model);
    return law_log_mgf_impl(law, t);
}

ConstantReport constant_A_X(const RandomModel& model) {
    if (model.p_dependent)
        throw DomainError("constant_A_X: model " + model.name() +
                          " is p-dependent (Re X not identically distributed, check C3), A_X is undefined");
    RealPartLaw law = make_law(model);
    Integrand head;
    if (law.log_mgf) {
        // No series is available for an opaque mgf; below t0 use h(t)/t^2 ~ h(t0)/t0^2.
        constexpr double t0 = 1e-4;
        const double c0 = law.log_mgf(t0) / (t0 * t0);
        head = [&law, c0](double t) { return t < t0 ? c0 : law.log_mgf(t) / (t * t); };
    } else {
        fill_moments(law);
        head = [&law](double t) { return law_log_mgf_impl(law, t) / (t * t); };
    }
    QuadratureOptions opts;
    opts.abs_tol = 1e-10;
    const IntegralResult h = integrate_adaptive(head, 0.0, 1.0, opts);
    const Integrand tail = [&law](double t) {
        const double f = law.log_mgf ? law.log_mgf(t) - t : law_log_mgf_minus_t(law, t);
        return f / (t * t);
    };
    const IntegralResult r = integrate_adaptive(tail, 1.0, INFINITY, opts);
    ConstantReport out;
    out.name = "A_X(" + model.name() + ")";
    out.piece_0_1 = h.value;
    out.piece_1_inf = r.value;
    out.value = 1.0 + h.value + r.value;
    out.tolerance = std::max(1e-8, h.abs_error_estimate + r.abs_error_estimate);
    return out;
}

double sato_tate_cdf(double theta) {
    if (theta <= 0.0) return 0.0;
    if (theta >= kPi) return 1.0;
    return (theta - std::sin(theta) * std::cos(theta)) / kPi;
}

double sato_tate_inverse_cdf(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return kPi;
    double lo = 0.0, hi = kPi;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (sato_tate_cdf(mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

LocalSample sample_local(const RandomModel& model, std::uint32_t p, CounterRng& rng) {
    LocalSample s;
    s.p = p;
    s.roots.resize(model.degree);
    draw_roots(model, p, rng, s.roots);
    s.angles.reserve(model.degree);
    std::complex<double> sum = 0.0;
    for (const auto& a : s.roots) {
        s.angles.push_back(a == 0.0 ? 0.0 : std::arg(a));
        sum += a;
    }
    s.x_value = sum / static_cast<double>(model.degree);
    return s;
}

ProductSampler::ProductSampler(RandomModel model, double y) : model_(std::move(model)), y_(y) {
    if (!(y >= 2.0)) throw DomainError("truncated product needs y >= 2");
    const auto table = shared_primes(static_cast<std::uint64_t>(y));
    const auto ps = table->up_to(y);
    primes_.assign(ps.begin(), ps.end());
    a_.resize(primes_.size());
    b_.resize(primes_.size());
    c_.resize(primes_.size());
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const double p = primes_[i];
        switch (model_.kind) {
            case ModelKind::rademacher:
            case ModelKind::quadratic_char:
                a_[i] = -std::log1p(-1.0 / p);
                b_[i] = -std::log1p(1.0 / p);
                c_[i] = quadratic_weight(primes_[i]);
                break;
            default:
                a_[i] = 2.0 / p;
                b_[i] = 1.0 / (p * p);
                break;
        }
    }
}

double ProductSampler::log_abs(std::uint64_t seed, std::uint64_t index) const {
    double total = 0.0;
    const std::size_t n = primes_.size();
    switch (model_.kind) {
        case ModelKind::rademacher:
            for (std::size_t i = 0; i < n; ++i) {
                CounterRng rng(seed, index, primes_[i]);
                total += rng.uniform() < 0.5 ? a_[i] : b_[i];
            }
            return total;
        case ModelKind::quadratic_char:
            for (std::size_t i = 0; i < n; ++i) {
                CounterRng rng(seed, index, primes_[i]);
                const double u = rng.uniform();
                total += u < c_[i] ? a_[i] : (u < 2 * c_[i] ? b_[i] : 0.0);
            }
            return total;
        case ModelKind::unit_circle:
            for (std::size_t i = 0; i < n; ++i) {
                CounterRng rng(seed, index, primes_[i]);
                const double c = std::cos(kPi * (2.0 * rng.uniform() - 1.0));
                total -= 0.5 * std::log1p(b_[i] - a_[i] * c);
            }
            return total;
        case ModelKind::sato_tate_symk:
            for (std::size_t i = 0; i < n; ++i) {
                CounterRng rng(seed, index, primes_[i]);
                const double theta = sato_tate_inverse_cdf(rng.uniform());
                for (int j = 0; j <= model_.k; ++j)
                    total -= 0.5 * std::log1p(b_[i] - a_[i] * std::cos((model_.k - 2 * j) * theta));
            }
            return total;
        case ModelKind::custom: {
            std::vector<std::complex<double>> roots(model_.degree);
            for (std::size_t i = 0; i < n; ++i) {
                CounterRng rng(seed, index, primes_[i]);
                draw_roots(model_, primes_[i], rng, roots);
                const double p = primes_[i];
                for (const auto& a : roots) total -= 0.5 * std::log1p((std::norm(a) / p - 2.0 * a.real()) / p);
            }
            return total;
        }
    }
    return total;
}

ProductSample ProductSampler::sample(std::uint64_t seed, std::uint64_t index) const {
    return {y_, log_abs(seed, index), seed, index};
}

ProductSample sample_truncated_product(const RandomModel& model, double y, std::uint64_t seed, std::uint64_t index) {
    return ProductSampler(model, y).sample(seed, index);
}

std::vector<double> sample_log_abs_batch(const RandomModel& model, double y, std::size_t n, std::uint64_t seed,
                                         unsigned threads) {
    const ProductSampler sampler(model, y);
    std::vector<double> out(n);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = sampler.log_abs(seed, i);
    });
    return out;
}

double truncation_bias_bound(const RandomModel& model, double y) { return model.degree / (y - 1.0); }

void write_samples_csv(std::ostream& out, std::span<const double> log_abs) {
    char buf[64];
    for (std::size_t i = 0; i < log_abs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, log_abs[i]);
        out << buf;
    }
}

bool ConditionReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.passed; });
}

namespace {

// Two-sample Kolmogorov-Smirnov statistic; ties are stepped over together.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

}  // namespace

ConditionReport validate_conditions(const RandomModel& model, std::size_t n, double tol, std::uint64_t seed) {
    if (n < 10000) throw InvalidArgument("validate_conditions: n_samples must be >= 10^4");
    constexpr std::uint32_t p_a = 2, p_b = 3, p_far = 1009;
    ConditionReport rep;
    rep.model = model.name();
    rep.n_samples = n;

    std::vector<double> re_a(n), re_b(n), re_far(n);
    std::vector<std::complex<double>> angle_sums(model.degree);
    std::complex<double> mean_x = 0.0;
    double second = 0.0;
    const std::array<double, 3> eps = {0.3, 0.1, 0.03};
    std::array<std::size_t, 3> hits{};
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng ra(seed, i, p_a), rb(seed, i, p_b), rf(seed, i, p_far);
        const LocalSample sa = sample_local(model, p_a, ra);
        re_a[i] = sa.x_value.real();
        re_b[i] = sample_local(model, p_b, rb).x_value.real();
        re_far[i] = sample_local(model, p_far, rf).x_value.real();
        mean_x += sa.x_value;
        second += std::norm(sa.x_value);
        for (int j = 0; j < model.degree; ++j) angle_sums[j] += sa.roots[j];
        for (std::size_t e = 0; e < eps.size(); ++e) {
            bool inside = true;
            for (int j = 0; j < model.degree; ++j)
                if (sa.roots[j] == 0.0 || std::abs(sa.angles[j]) > eps[e]) inside = false;
            hits[e] += inside;
        }
    }
    const double dn = static_cast<double>(n);
    mean_x /= dn;
    second /= dn;

    {
        ConditionCheck c{"C1 mean-zero", false, 0.0, tol, ""};
        const double se = std::sqrt(std::max(second, 1e-300) / dn);
        c.statistic = std::abs(mean_x) / se;
        c.passed = c.statistic <= tol;
        std::string per = "per-angle |mean e^{i theta_j}|:";
        for (const auto& s : angle_sums) per += fmt(" %.3g", std::abs(s / dn));
        c.detail = fmt("|mean X(2)| = %.3g, %.3g standard errors; ", std::abs(mean_x), c.statistic) + per;
        rep.checks.push_back(c);
    }
    {
        ConditionCheck c{"C2 independence", false, 0.0, tol, ""};
        double ma = 0, mb = 0;
        for (std::size_t i = 0; i < n; ++i) ma += re_a[i], mb += re_b[i];
        ma /= dn;
        mb /= dn;
        double sab = 0, saa = 0, sbb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sab += (re_a[i] - ma) * (re_b[i] - mb);
            saa += (re_a[i] - ma) * (re_a[i] - ma);
            sbb += (re_b[i] - mb) * (re_b[i] - mb);
        }
        const double corr = saa > 0 && sbb > 0 ? sab / std::sqrt(saa * sbb) : 0.0;
        c.statistic = std::abs(corr) * std::sqrt(dn);
        c.passed = c.statistic <= tol;
        c.detail = fmt("corr(Re X(2), Re X(3)) = %.3g; streams are keyed per prime", corr);
        rep.checks.push_back(c);
    }
    {
        ConditionCheck c{"C3 identically distributed", false, 0.0, 0.0, ""};
        c.statistic = ks_statistic(re_a, re_far);
        c.threshold = std::sqrt(-0.5 * std::log(1e-3 / 2)) * std::sqrt(2.0 / dn);
        c.passed = c.statistic <= c.threshold && !model.p_dependent;
        c.detail = fmt("KS D = %.4g vs critical %.4g (alpha = 1e-3), Re X at p = 2 vs 1009", c.statistic, c.threshold);
        if (model.p_dependent) c.detail += "; model is p-dependent";
        rep.checks.push_back(c);
    }
    {
        ConditionCheck c{"C4 small-angle mass", false, 0.0, 0.0, ""};
        std::array<double, 3> q{};
        bool positive = true;
        for (std::size_t e = 0; e < eps.size(); ++e) {
            q[e] = hits[e] / dn;
            positive = positive && hits[e] > 0;
        }
        c.detail = fmt("P(all |theta_j| <= eps) at eps = 0.3, 0.1, 0.03: %.4g, %.4g, %.4g", q[0], q[1], q[2]);
        if (positive) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t e = 0; e < eps.size(); ++e) {
                const double x = std::log(eps[e]), yv = std::log(q[e]);
                sx += x, sy += yv, sxx += x * x, sxy += x * yv;
            }
            const double m = eps.size();
            const double alpha = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            // Largest c for which q >= c eps^alpha holds at all three points.
            double cc = std::numeric_limits<double>::infinity();
            for (std::size_t e = 0; e < eps.size(); ++e) cc = std::min(cc, q[e] / std::pow(eps[e], alpha));
            rep.c4_alpha = alpha;
            rep.c4_c = cc;
            c.statistic = alpha;
            c.passed = true;
            c.detail += fmt("; fitted c = %.4g, alpha = %.4g", cc, alpha);
        } else {
            c.detail += "; no hits at some eps, sample too small to support a power bound";
        }
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace eulerprod
