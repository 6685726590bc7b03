#include "eulerprod/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>

#include "eulerprod/error.hpp"
#include "eulerprod/models.hpp"
#include "eulerprod/parallel.hpp"
#include "eulerprod/primes.hpp"

namespace eulerprod {

namespace {

std::uint64_t umod(std::int64_t a, std::uint64_t m) {
    const std::int64_t r = a % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

bool squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

std::vector<std::uint32_t> primes_to(double y) {
    if (!(y >= 2.0)) throw DomainError("short product: y must be >= 2");
    const auto table = shared_primes(static_cast<std::uint64_t>(y));
    const auto ps = table->up_to(y);
    return {ps.begin(), ps.end()};
}

// -log|1 - p^{-1-it}|, stable for all t.
double local_log_abs(double inv_p, double phase) {
    return -0.5 * std::log1p(inv_p * inv_p - 2.0 * inv_p * std::cos(phase));
}

struct ZetaTables {
    std::vector<double> inv_p, log_p;
    explicit ZetaTables(double y) {
        for (const std::uint32_t p : primes_to(y)) {
            inv_p.push_back(1.0 / p);
            log_p.push_back(std::log(static_cast<double>(p)));
        }
    }
    double log_abs(double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < inv_p.size(); ++i) s += local_log_abs(inv_p[i], t * log_p[i]);
        return s;
    }
};

}  // namespace

int kronecker_symbol(std::int64_t d, std::uint64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    if ((d & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    const int v = std::countr_zero(n);
    n >>= v;
    if (v & 1) {
        // (d/2) = 1 for d = +-1 mod 8, -1 for d = +-3 mod 8.
        const auto r = static_cast<std::uint64_t>(d) & 7;
        if (r == 3 || r == 5) k = -k;
    }
    // (d/n) for odd n > 0 depends only on d mod n (Jacobi symbol).
    std::uint64_t a = umod(d, n), b = n;
    while (a != 0) {
        const int w = std::countr_zero(a);
        a >>= w;
        if ((w & 1) && ((b & 7) == 3 || (b & 7) == 5)) k = -k;
        if (a & b & 2) k = -k;
        std::swap(a, b);
        a %= b;
    }
    return b == 1 ? k : 0;
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 1 || d == 0) return false;
    const std::uint64_t r = umod(d, 4);
    if (r == 1) return squarefree(static_cast<std::uint64_t>(std::abs(d)));
    if (r != 0) return false;
    const std::int64_t m = d / 4;
    const std::uint64_t mr = umod(m, 4);
    return (mr == 2 || mr == 3) && squarefree(static_cast<std::uint64_t>(std::abs(m)));
}

DiscriminantFamily fundamental_discriminants(double x) {
    if (!(x >= 3.0) || x > 2147483648.0) throw DomainError("fundamental_discriminants: x must be in [3, 2^31]");
    const auto X = static_cast<std::uint64_t>(std::floor(x));
    // Squarefree flags by striking multiples of p^2.
    std::vector<std::uint8_t> sqf(X + 1, 1);
    sqf[0] = 0;
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X))) + 1;
    for (const std::uint32_t p : shared_primes(std::max<std::uint64_t>(root, 2))->up_to(static_cast<double>(root))) {
        const std::uint64_t q = std::uint64_t{p} * p;
        for (std::uint64_t m = q; m <= X; m += q) sqf[m] = 0;
    }
    DiscriminantFamily fam;
    fam.x = x;
    auto accept = [&](std::int64_t d) {
        const std::uint64_t r = umod(d, 4);
        if (r == 1) return d != 1 && sqf[static_cast<std::uint64_t>(std::abs(d))] != 0;
        if (r != 0) return false;
        const std::int64_t m = d / 4;
        const std::uint64_t mr = umod(m, 4);
        return (mr == 2 || mr == 3) && sqf[static_cast<std::uint64_t>(std::abs(m))] != 0;
    };
    for (std::int64_t n = static_cast<std::int64_t>(X); n >= 1; --n)
        if (accept(-n)) fam.discs.push_back(-n);
    for (std::int64_t n = 1; n <= static_cast<std::int64_t>(X); ++n)
        if (accept(n)) fam.discs.push_back(n);
    return fam;
}

ShortProductValue zeta_short_product(double t, double y) {
    ShortProductValue out;
    out.parameter = t;
    out.y = y;
    CompensatedSum re, im;
    for (const std::uint32_t p : primes_to(y)) {
        const double ip = 1.0 / p, ph = t * std::log(static_cast<double>(p));
        re.add(local_log_abs(ip, ph));
        // arg (1 - e^{-i ph}/p)^{-1}
        im.add(-std::atan2(ip * std::sin(ph), 1.0 - ip * std::cos(ph)));
    }
    out.log_abs = re.value();
    out.value = std::polar(std::exp(out.log_abs), im.value());
    return out;
}

std::complex<double> log_zeta_short_dirichlet(double t, double y) {
    CompensatedSum re, im;
    for (const std::uint32_t p : primes_to(y)) {
        const double lp = std::log(static_cast<double>(p));
        double pk = p;
        for (int k = 1; pk <= y; ++k, pk *= p) {
            const double mag = 1.0 / (k * pk);
            re.add(mag * std::cos(k * t * lp));
            im.add(-mag * std::sin(k * t * lp));
        }
    }
    return {re.value(), im.value()};
}

ShortProductValue dirichlet_L1_short(std::int64_t d, double y) {
    if (!is_fundamental_discriminant(d))
        throw InvalidArgument("dirichlet_L1_short: d = " + std::to_string(d) + " is not a fundamental discriminant");
    ShortProductValue out;
    out.parameter = static_cast<double>(d);
    out.y = y;
    CompensatedSum s;
    for (const std::uint32_t p : primes_to(y)) {
        const int chi = kronecker_symbol(d, p);
        if (chi != 0) s.add(-std::log1p(-chi / static_cast<double>(p)));
    }
    out.log_abs = s.value();
    out.value = std::exp(out.log_abs);
    return out;
}

std::vector<double> quadratic_family_log_values(const DiscriminantFamily& family, double y, unsigned threads) {
    const auto ps = primes_to(y);
    // chi_d(p) for odd p is the Legendre symbol of d mod p; tabulate it for small p.
    constexpr std::uint32_t kTableLimit = 20000;
    std::vector<std::size_t> offset(ps.size() + 1, 0);
    for (std::size_t i = 0; i < ps.size(); ++i) offset[i + 1] = offset[i] + (ps[i] <= kTableLimit ? ps[i] : 0);
    std::vector<std::int8_t> legendre(offset.back(), -1);
    std::vector<double> log_minus(ps.size()), log_plus(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::uint32_t p = ps[i];
        log_minus[i] = -std::log1p(-1.0 / p);
        log_plus[i] = -std::log1p(1.0 / p);
        if (p == 2 || p > kTableLimit) continue;
        std::int8_t* row = legendre.data() + offset[i];
        row[0] = 0;
        for (std::uint64_t r = 1; r <= p / 2; ++r) row[r * r % p] = 1;
    }
    std::vector<double> out(family.discs.size());
    parallel_for(out.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            const std::int64_t d = family.discs[j];
            double s = 0.0;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                const std::uint32_t p = ps[i];
                int chi;
                if (p == 2) {
                    const auto r = static_cast<std::uint64_t>(d) & 7;
                    chi = (r & 1) == 0 ? 0 : (r == 1 || r == 7) ? 1 : -1;
                } else if (p <= kTableLimit) {
                    chi = legendre[offset[i] + umod(d, p)];
                } else {
                    chi = kronecker_symbol(d, p);
                }
                if (chi > 0)
                    s += log_minus[i];
                else if (chi < 0)
                    s += log_plus[i];
            }
            out[j] = s;
        }
    });
    return out;
}

CharacterSquareSum character_square_sum(const DiscriminantFamily& family, std::uint64_t l) {
    if (l == 0) throw InvalidArgument("character_square_sum: l must be >= 1");
    CharacterSquareSum out;
    out.x = family.x;
    out.l = l;
    std::uint64_t count = 0;
    for (const std::int64_t d : family.discs) count += std::gcd(static_cast<std::uint64_t>(std::abs(d)), l) == 1;
    out.sum = static_cast<double>(count);
    double factor = 1.0;
    std::uint64_t m = l;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        factor *= static_cast<double>(p) / (p + 1);
        while (m % p == 0) m /= p;
    }
    if (m > 1) factor *= static_cast<double>(m) / (m + 1);
    out.main_term = 6.0 / (std::numbers::pi * std::numbers::pi) * family.x * factor;
    out.relative_gap = std::abs(out.sum - out.main_term) / out.main_term;
    return out;
}

CharacterSquareSum character_square_sum(double x, std::uint64_t l) {
    return character_square_sum(fundamental_discriminants(x), l);
}

double character_sum(const DiscriminantFamily& family, std::uint64_t n) {
    std::int64_t s = 0;
    for (const std::int64_t d : family.discs) s += kronecker_symbol(d, n);
    return static_cast<double>(s);
}

double symk_local_factor(double theta, int k, std::uint32_t p) {
    if (k < 1) throw DomainError("symk_local_factor: k must be >= 1");
    if (p < 2) throw DomainError("symk_local_factor: p must be >= 2");
    const double ip = 1.0 / p;
    CompensatedSum s;
    for (int j = 0; j <= k; ++j) s.add(local_log_abs(ip, (k - 2 * j) * theta));
    return std::exp(s.value());
}

std::complex<double> symk_local_factor_complex(double theta, int k, std::uint32_t p) {
    if (k < 1) throw DomainError("symk_local_factor: k must be >= 1");
    if (p < 2) throw DomainError("symk_local_factor: p must be >= 2");
    std::complex<double> v = 1.0;
    for (int j = 0; j <= k; ++j) v /= 1.0 - std::polar(1.0 / p, (k - 2 * j) * theta);
    return v;
}

ExtremeScan extreme_scan(double T, std::size_t count, double y, double stride, unsigned threads) {
    if (!(T > std::numbers::e)) throw DomainError("extreme_scan: T must exceed e");
    if (!(stride > 0.0) || count == 0 || static_cast<double>(count) * stride > T)
        throw DomainError("extreme_scan: need count >= 1, stride > 0 and count * stride <= T");
    const ZetaTables z(y);
    std::vector<double> vals(count);
    parallel_for(count, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) vals[i] = z.log_abs(T + static_cast<double>(i) * stride);
    });
    ExtremeScan out;
    out.T = T;
    out.y = y;
    out.stride = stride;
    out.count = count;
    const auto it = std::max_element(vals.begin(), vals.end());
    out.argmax_t = T + static_cast<double>(it - vals.begin()) * stride;
    out.max_abs = std::exp(*it);
    out.benchmark = std::exp(kEulerGamma) * std::log(std::log(T));
    return out;
}

std::vector<double> stratified_t_samples(double T, std::size_t n, std::uint64_t seed) {
    if (!(T > 0.0) || n == 0) throw DomainError("stratified_t_samples: need T > 0 and n >= 1");
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng(seed, i, 0x7374726174ULL);
        ts[i] = T + T * (static_cast<double>(i) + rng.uniform()) / static_cast<double>(n);
    }
    return ts;
}

ZetaMomentSample zeta_empirical_moment(double T, double y, int k, std::size_t n, std::uint64_t seed,
                                       unsigned threads) {
    if (k < 1) throw DomainError("zeta_empirical_moment: k must be >= 1");
    const auto ts = stratified_t_samples(T, n, seed);
    const ZetaTables z(y);
    std::vector<double> vals(n);
    parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) vals[i] = std::exp(2.0 * k * z.log_abs(ts[i]));
    });
    CompensatedSum s, s2;
    for (const double v : vals) s.add(v);
    ZetaMomentSample out;
    out.T = T;
    out.y = y;
    out.k = k;
    out.n = n;
    out.mean = s.value() / static_cast<double>(n);
    for (const double v : vals) s2.add((v - out.mean) * (v - out.mean));
    out.std_error = n > 1 ? std::sqrt(s2.value() / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    return out;
}

void write_family_csv(std::ostream& out, std::span<const std::pair<double, double>> rows) {
    char buf[96];
    for (const auto& [param, value] : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", param, value);
        out << buf;
    }
}

}  // namespace eulerprod
