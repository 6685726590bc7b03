#include "eulerprod/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "eulerprod/error.hpp"
#include "eulerprod/parallel.hpp"
#include "eulerprod/primes.hpp"
#include "eulerprod/quadrature.hpp"

namespace eulerprod {

namespace {

constexpr double kPi = std::numbers::pi;

// log of E* = E prod_j (1 + c sin^2(theta_j/2))^{-r/2} with c = 4p/(p-1)^2, i.e.
// E_p with the factor (1 - 1/p)^{-rd} removed. Positive integrand, no cancellation.
double log_angle_average(const RandomModel& model, double p, double r) {
    const double c = 4.0 * p / ((p - 1.0) * (p - 1.0));
    QuadratureOptions opts;
    opts.rel_tol = 1e-13;
    if (model.kind == ModelKind::unit_circle) {
        const Integrand g = [c, r](double th) {
            const double s = std::sin(0.5 * th);
            return std::exp(-0.5 * r * std::log1p(c * s * s));
        };
        const double peaks[] = {0.0};
        const double v = integrate_peaked(g, 0.0, kPi, peaks, r * c / 8.0, opts).value;
        return std::log(v / kPi);
    }
    // sato_tate_symk
    const int k = model.k;
    const Integrand g = [c, r, k](double th) {
        double e = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double s = std::sin(0.5 * (k - 2 * j) * th);
            e += std::log1p(c * s * s);
        }
        const double w = std::sin(th);
        return std::exp(-0.5 * r * e) * w * w;
    };
    std::vector<double> peaks = {0.0};
    if (k % 2 == 0) peaks.push_back(kPi);
    const double spread = k * (k + 1.0) * (k + 2.0) / 3.0;  // sum_j (k - 2j)^2
    const double v = integrate_peaked(g, 0.0, kPi, peaks, r * c * spread / 8.0, opts).value;
    return std::log(v * 2.0 / kPi);
}

double local_truncation(const std::vector<double>& terms, double total) {
    const std::size_t n = terms.size();
    if (n < 2 || total <= 0.0) return 0.0;
    const double last = terms[n - 1], prev = terms[n - 2];
    if (last == 0.0) return 0.0;
    const double ratio = prev > 0.0 ? last / prev : 1.0;
    if (ratio >= 1.0) return last / total;
    return last * ratio / (1.0 - ratio) / total;
}

// c_k(p^j), j = 0..len-1, from the local coefficients a(p^j).
std::vector<std::complex<double>> local_convolution(const CoefficientProvider& a, std::uint32_t p, int k,
                                                   std::size_t len) {
    std::vector<std::complex<double>> base(len);
    base[0] = 1.0;
    for (std::size_t j = 1; j < len; ++j) base[j] = a(p, static_cast<int>(j));
    if (std::abs(base.size() > 1 ? base[1] : 0.0) >= p)
        throw DomainError("diagonal moment: |a(p)| >= p at p = " + std::to_string(p) + ", local series diverges");
    std::vector<std::complex<double>> c = base;
    for (int step = 1; step < k; ++step) {
        std::vector<std::complex<double>> next(len);
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; i + j < len; ++j) next[i + j] += c[i] * base[j];
        c = std::move(next);
    }
    return c;
}

}  // namespace

std::string to_string(MomentMethod m) {
    switch (m) {
        case MomentMethod::exact_product: return "exact_product";
        case MomentMethod::asymptotic_thm: return "asymptotic_thm";
        case MomentMethod::empirical_mc: return "empirical_mc";
        case MomentMethod::diagonal: return "diagonal";
    }
    return "?";
}

MomentMethod moment_method_from_string(const std::string& s) {
    if (s == "exact_product" || s == "exact") return MomentMethod::exact_product;
    if (s == "asymptotic_thm" || s == "asymptotic") return MomentMethod::asymptotic_thm;
    if (s == "empirical_mc" || s == "empirical") return MomentMethod::empirical_mc;
    if (s == "diagonal") return MomentMethod::diagonal;
    throw InvalidArgument("unknown moment method '" + s + "'");
}

double log_local_expectation(const RandomModel& model, std::uint32_t prime, double r) {
    if (!(r >= 0.0)) throw DomainError("local expectation needs r >= 0");
    if (r == 0.0) return 0.0;
    const double p = prime;
    const double lp = -std::log1p(-1.0 / p);  // log (1 - 1/p)^{-1}
    switch (model.kind) {
        case ModelKind::rademacher: {
            // (1/2)[(1-1/p)^{-r} + (1+1/p)^{-r}]
            const double q = std::exp(r * std::log1p(-2.0 / (p + 1.0)));
            return r * lp + std::log(0.5) + std::log1p(q);
        }
        case ModelKind::quadratic_char: {
            const double w = p / (2.0 * (p + 1.0));
            const double q = std::exp(r * std::log1p(-2.0 / (p + 1.0)));
            const double z = std::exp(-r * lp) / (p + 1.0);
            return r * lp + std::log(w + w * q + z);
        }
        case ModelKind::unit_circle:
        case ModelKind::sato_tate_symk:
            return r * model.degree * lp + log_angle_average(model, p, r);
        case ModelKind::custom:
            if (!model.custom->log_local_expectation)
                throw InvalidArgument("custom model has no local expectation");
            return model.custom->log_local_expectation(prime, r);
    }
    return 0.0;
}

double local_expectation(const RandomModel& model, std::uint32_t p, double r) {
    return std::exp(log_local_expectation(model, p, r));
}

MomentEstimate exact_moment_log(const RandomModel& model, double r, double prime_limit, LocalMethod method,
                                unsigned threads) {
    if (!(r >= 0.0)) throw DomainError("exact_moment_log: r must be >= 0");
    const double rd = r * model.degree;
    if (prime_limit < std::sqrt(rd))
        throw DomainError("exact_moment_log: prime_limit must be >= sqrt(rd) = " + std::to_string(std::sqrt(rd)));
    if (prime_limit < 2.0) throw DomainError("exact_moment_log: prime_limit must be >= 2");

    MomentEstimate est;
    est.r = r;
    est.method = MomentMethod::exact_product;
    const auto table = shared_primes(static_cast<std::uint64_t>(prime_limit));
    const auto primes = table->up_to(prime_limit);
    est.n = primes.size();
    if (r == 0.0) return est;

    const double split = std::sqrt(rd);
    std::vector<double> terms(primes.size());
    parallel_for(primes.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint32_t p = primes[i];
            if (method == LocalMethod::proof_split && p > split)
                terms[i] = log_mgf(model, rd / p, p);
            else
                terms[i] = log_local_expectation(model, p, r);
        }
    });
    CompensatedSum sum;
    for (const double t : terms) sum.add(t);
    est.log_moment = sum.value();

    const double L = prime_limit;
    est.error_band = rd * rd / (L * std::log(L));
    if (L < std::pow(r, 1.5) * model.degree)
        est.caveats.push_back("prime_limit below r^{3/2} d: truncation bias may exceed the recorded tail bound");
    if (method == LocalMethod::proof_split) {
        est.error_band += rd / (split * std::log(std::max(split, 2.0)));
        est.caveats.push_back("proof_split: h(rd/p) replaces log E_p for p > sqrt(rd), O(rd/p^2) per prime");
    }
    return est;
}

MomentEstimate asymptotic_moment_log(double A, int d, double r, double band_c) {
    const double rd = r * d;
    if (!(rd > 1.0)) throw DomainError("asymptotic_moment_log: need rd > 1");
    const double L = std::log(rd);
    MomentEstimate est;
    est.r = r;
    est.method = MomentMethod::asymptotic_thm;
    est.log_moment = rd * std::log(L) + kEulerGamma * rd + (rd / L) * (A - 1.0);
    est.error_band = band_c * rd / (L * L);
    est.caveats.push_back("O(1/log r) relative correction to the (rd/log rd) term is unquantified; band constant c = " +
                          std::to_string(band_c));
    return est;
}

MomentEstimate asymptotic_moment_log(const RandomModel& model, double r, double band_c) {
    const double d8 = std::pow(static_cast<double>(model.degree), 8);
    if (!(r > d8))
        throw DomainError("asymptotic_moment_log: out of regime, need r > d^8 = " + std::to_string(d8));
    double A;
    switch (model.kind) {
        case ModelKind::rademacher: A = C1_value(); break;
        case ModelKind::unit_circle: A = C2_value(); break;
        default: A = constant_A_X(model).value; break;
    }
    return asymptotic_moment_log(A, model.degree, r, band_c);
}

PsiDistribution PsiDistribution::dirac(double at) {
    PsiDistribution psi;
    psi.name = "dirac";
    psi.U = std::max(at, 0.0);
    psi.atoms = {{1.0, at}};
    return psi;
}

PsiDistribution PsiDistribution::semicircle() {
    PsiDistribution psi;
    psi.name = "semicircle";
    psi.U = 2.0;
    psi.density = [](double t) { return 2.0 / kPi * std::sqrt(std::max(0.0, 1.0 - 0.25 * t * t)); };
    return psi;
}

PsiDistribution PsiDistribution::cm() {
    PsiDistribution psi;
    psi.name = "cm";
    psi.U = 2.0;
    psi.atoms = {{0.5, 0.0}};
    psi.density = [](double t) { return 1.0 / (2.0 * kPi * std::sqrt(1.0 - 0.25 * t * t)); };
    psi.endpoint_singular = true;
    return psi;
}

PsiMoments psi_moments(const PsiDistribution& psi) {
    PsiMoments out;
    for (const auto& [w, x] : psi.atoms) {
        out.mass += w;
        out.N += w * x;
        if (x > 0.0) out.M += w * x * std::log(x);
    }
    if (psi.density) {
        QuadratureOptions opts;
        opts.abs_tol = 1e-13;
        const double U = psi.U;
        auto integrate = [&](const std::function<double(double)>& f) {
            if (!psi.endpoint_singular) {
                return integrate_adaptive([&](double t) { return f(t) * psi.density(t); }, 0.0, U, opts).value;
            }
            // t = U (1 - s^2), s = 1 - w: cancels an inverse square root at t = U.
            const Integrand g = [&](double w) {
                const double s = 1.0 - w;
                const double t = U * (1.0 - s * s);
                return f(t) * psi.density(t) * 2.0 * U * s;
            };
            return integrate_adaptive(g, 0.0, 1.0, opts).value;
        };
        out.mass += integrate([](double) { return 1.0; });
        out.N += integrate([](double t) { return t; });
        out.M += integrate([](double t) { return t > 0.0 ? t * std::log(t) : 0.0; });
    }
    if (std::abs(out.mass - 1.0) > 1e-8)
        throw DomainError("psi_moments: distribution '" + psi.name + "' is not normalized (mass " +
                          std::to_string(out.mass) + ")");
    return out;
}

LocalFactorExtremum local_factor_max(std::span<const std::complex<double>> roots, std::uint32_t p) {
    if (roots.size() > 16) throw InvalidArgument("local_factor_max: degree above 16");
    for (const auto& a : roots)
        if (std::abs(a) > 1.0 + 1e-12) throw DomainError("local_factor_max: root of modulus > 1 violates Ramanujan");
    const double pinv = 1.0 / p;
    auto log_abs = [&](double t) {
        const std::complex<double> e = std::polar(1.0, t);
        double s = 0.0;
        for (const auto& a : roots) s -= 0.5 * std::log(std::norm(1.0 - e * a * pinv));
        return s;
    };
    constexpr int kGrid = 4096;
    const double h = 2.0 * kPi / kGrid;
    double best_t = 0.0, best = log_abs(0.0);
    auto better = [&](double t, double v) {
        const double tol = 1e-13 * std::max(1.0, std::abs(best));
        if (v > best + tol) return true;
        if (v < best - tol) return false;
        if (std::abs(t) != std::abs(best_t)) return std::abs(t) < std::abs(best_t);
        return t > best_t;
    };
    for (int i = 0; i <= kGrid; ++i) {
        const double t = i == kGrid ? kPi : -kPi + h * i;
        const double v = log_abs(t);
        if (better(t, v)) best_t = t, best = v;
    }
    // Golden-section refinement on the grid cell pair around the winner.
    double lo = std::max(-kPi, best_t - h), hi = std::min(kPi, best_t + h);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = log_abs(x1), f2 = log_abs(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1, x1 = x2, f1 = f2;
            x2 = lo + g * (hi - lo), f2 = log_abs(x2);
        } else {
            hi = x2, x2 = x1, f2 = f1;
            x1 = hi - g * (hi - lo), f1 = log_abs(x1);
        }
    }
    const double t_ref = 0.5 * (lo + hi);
    const double v_ref = log_abs(t_ref);
    if (v_ref > best + 1e-15 * std::max(1.0, std::abs(best))) best_t = t_ref, best = v_ref;

    LocalFactorExtremum out;
    out.p = p;
    out.roots.assign(roots.begin(), roots.end());
    out.phi_p = best_t;
    out.max_abs = std::exp(best);
    return out;
}

BConstant b_constant(const RootProvider& provider, double psi_N, BFlavor flavor, double prime_limit) {
    BConstant out;
    if (prime_limit < 2.0) return out;
    const auto table = shared_primes(static_cast<std::uint64_t>(prime_limit));
    const auto primes = table->up_to(prime_limit);
    CompensatedSum sum;
    std::size_t d = 1;
    for (const std::uint32_t p : primes) {
        const auto roots = provider(p);
        d = std::max(d, roots.size());
        double log_max;
        if (flavor == BFlavor::max_over_angle) {
            log_max = std::log(local_factor_max(roots, p).max_abs);
        } else {
            double plus = 0.0, minus = 0.0;
            for (const auto& a : roots) {
                plus -= 0.5 * std::log(std::norm(1.0 - a / static_cast<double>(p)));
                minus -= 0.5 * std::log(std::norm(1.0 + a / static_cast<double>(p)));
            }
            log_max = std::max(plus, minus);
        }
        sum.add(log_max + psi_N * std::log1p(-1.0 / p));
    }
    out.primes = primes.size();
    out.log_value = sum.value();
    out.value = std::exp(out.log_value);
    const double L = prime_limit;
    out.tail_bound = (d + psi_N) * (d + psi_N) / (L * std::log(L));
    return out;
}

MomentEstimate asymptotic_moment_log_psi(const PsiDistribution& psi, PsiFlavor flavor, double r, double b) {
    if (!(r > std::numbers::e)) throw DomainError("asymptotic_moment_log_psi: need r > e");
    if (!(b > 0.0)) throw DomainError("asymptotic_moment_log_psi: b must be positive");
    const PsiMoments pm = psi_moments(psi);
    const double C = flavor == PsiFlavor::unit_circle ? C2_value() : C1_value();
    const double L = std::log(r);
    MomentEstimate est;
    est.r = r;
    est.method = MomentMethod::asymptotic_thm;
    est.log_moment = r * pm.N * std::log(L) + r * (kEulerGamma * pm.N + std::log(b)) + (r / L) * (pm.M + pm.N * (C - 1.0));
    est.error_band = r / (L * L);
    est.caveats.push_back("o(r/log r) remainder unquantified; error_band is an (r/log^2 r)-scale heuristic");
    if (r < std::exp(10.0)) est.caveats.push_back("r below e^10: asymptotic regime doubtful");
    return est;
}

int default_j_cap(int k, double y) {
    if (y < 2.0) return 40;
    return std::max(40, static_cast<int>(std::ceil(4.0 * k * std::log(y) / std::log(2.0))));
}

DiagonalResult diagonal_moment(const CoefficientProvider& a, double y, int k, int j_cap) {
    if (k < 1) throw DomainError("diagonal_moment: k must be >= 1");
    DiagonalResult out;
    out.j_cap = j_cap > 0 ? j_cap : default_j_cap(k, y);
    if (y < 2.0) return out;
    const auto table = shared_primes(static_cast<std::uint64_t>(y));
    CompensatedSum log_sum;
    for (const std::uint32_t p : table->up_to(y)) {
        const auto c = local_convolution(a, p, k, out.j_cap + 1);
        const double q = 1.0 / (static_cast<double>(p) * p);
        std::vector<double> terms(c.size());
        double w = 1.0, s = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j, w *= q) s += terms[j] = std::norm(c[j]) * w;
        out.truncation_bound += local_truncation(terms, s);
        log_sum.add(std::log(s));
    }
    out.log_value = log_sum.value();
    out.value = std::exp(out.log_value);
    return out;
}

DiagonalResult quadratic_diagonal_moment(const CoefficientProvider& a, double y, int k, int j_cap) {
    if (k < 1) throw DomainError("quadratic_diagonal_moment: k must be >= 1");
    DiagonalResult out;
    out.j_cap = j_cap > 0 ? j_cap : default_j_cap(k, y);
    if (y < 2.0) return out;
    const auto table = shared_primes(static_cast<std::uint64_t>(y));
    CompensatedSum log_sum;
    for (const std::uint32_t p : table->up_to(y)) {
        const auto c = local_convolution(a, p, k, 2 * out.j_cap + 1);
        const double q = 1.0 / (static_cast<double>(p) * p);
        std::vector<double> terms;
        double w = q, s = 0.0;
        for (int j = 1; j <= out.j_cap; ++j, w *= q) {
            terms.push_back(c[2 * j].real() * w);
            s += terms.back();
        }
        const double local = 1.0 + p / (p + 1.0) * s;
        std::vector<double> mags(terms.size());
        std::transform(terms.begin(), terms.end(), mags.begin(), [](double v) { return std::abs(v); });
        out.truncation_bound += local_truncation(mags, std::abs(local));
        log_sum.add(std::log(local));
    }
    out.log_value = log_sum.value();
    out.value = std::exp(out.log_value);
    return out;
}

MomentEstimate empirical_moment(std::span<const double> log_abs, double r) {
    if (log_abs.empty()) throw InvalidArgument("empirical_moment: empty batch");
    MomentEstimate est;
    est.r = r;
    est.method = MomentMethod::empirical_mc;
    est.n = log_abs.size();
    if (log_abs.size() < 100) est.caveats.push_back("fewer than 100 samples: standard error unreliable");
    if (r == 0.0) return est;
    double shift = -std::numeric_limits<double>::infinity();
    for (const double x : log_abs) shift = std::max(shift, r * x);
    const double n = static_cast<double>(log_abs.size());
    double s = 0.0;
    for (const double x : log_abs) s += std::exp(r * x - shift);
    const double mean = s / n;
    double ss = 0.0;
    for (const double x : log_abs) {
        const double dev = std::exp(r * x - shift) - mean;
        ss += dev * dev;
    }
    const double var = log_abs.size() > 1 ? ss / (n - 1.0) : 0.0;
    est.log_moment = shift + std::log(mean);
    est.relative_std_error = std::sqrt(var / n) / mean;
    est.error_band = 3.0 * est.relative_std_error;
    return est;
}

}  // namespace eulerprod
