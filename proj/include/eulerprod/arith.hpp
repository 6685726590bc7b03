#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace eulerprod {

/// Kronecker symbol (d/n). (d/0) is 1 for d = +-1 and 0 otherwise.
int kronecker_symbol(std::int64_t d, std::uint64_t n);

/// d = 1 mod 4 squarefree, or d = 4m with m squarefree and m = 2, 3 mod 4. d = 1 is rejected.
bool is_fundamental_discriminant(std::int64_t d);

struct DiscriminantFamily {
    double x = 0.0;
    std::vector<std::int64_t> discs;  // ascending, both signs, |d| <= x, d != 1
};

/// All fundamental discriminants with |d| <= x. Throws DomainError for x < 3 or x > 2^31.
DiscriminantFamily fundamental_discriminants(double x);

struct ShortProductValue {
    double parameter = 0.0;  // t, or d
    double y = 0.0;
    std::complex<double> value;
    double log_abs = 0.0;
};

/// prod_{p <= y} (1 - p^{-1-it})^{-1}, summed in the log domain. DomainError for y < 2.
ShortProductValue zeta_short_product(double t, double y);

/// sum_{p^k <= y} p^{-k(1+it)} / k.
std::complex<double> log_zeta_short_dirichlet(double t, double y);

/// prod_{p <= y} (1 - chi_d(p)/p)^{-1}. InvalidArgument unless d is fundamental (d = 1 included).
ShortProductValue dirichlet_L1_short(std::int64_t d, double y);

/// log L(1, chi_d; y) for every d in the family, in family order. Uses per-prime
/// residue tables; identical output for any thread count.
std::vector<double> quadratic_family_log_values(const DiscriminantFamily& family, double y, unsigned threads = 0);

struct CharacterSquareSum {
    double x = 0.0;
    std::uint64_t l = 1;
    double sum = 0.0;        // sum over the family of chi_d(l^2) = #{d : gcd(d, l) = 1}
    double main_term = 0.0;  // (6/pi^2) x prod_{p | l} p/(p + 1)
    double relative_gap = 0.0;
};

/// InvalidArgument for l = 0.
CharacterSquareSum character_square_sum(double x, std::uint64_t l);
CharacterSquareSum character_square_sum(const DiscriminantFamily& family, std::uint64_t l);

/// sum over the family of chi_d(n).
double character_sum(const DiscriminantFamily& family, std::uint64_t n);

/// prod_{j=0}^k (1 - e^{i theta (k - 2j)}/p)^{-1}; real and positive by conjugate pairing.
double symk_local_factor(double theta, int k, std::uint32_t p);
/// The same product taken factor by factor in complex arithmetic, for checking the pairing.
std::complex<double> symk_local_factor_complex(double theta, int k, std::uint32_t p);

struct ExtremeScan {
    double T = 0.0;
    double y = 0.0;
    double stride = 0.0;
    std::size_t count = 0;
    double argmax_t = 0.0;
    double max_abs = 0.0;
    double benchmark = 0.0;  // e^gamma log log T, for reporting only
};

/// max of |zeta(1 + it, y)| over t = T + i stride, 0 <= i < count.
/// DomainError unless count * stride <= T, y >= 2 and T > e.
ExtremeScan extreme_scan(double T, std::size_t count, double y, double stride, unsigned threads = 0);

/// One uniform draw in each of n equal strata of [T, 2T], keyed on (seed, i).
std::vector<double> stratified_t_samples(double T, std::size_t n, std::uint64_t seed);

struct ZetaMomentSample {
    double T = 0.0;
    double y = 0.0;
    int k = 0;
    std::size_t n = 0;
    double mean = 0.0;       // of |zeta(1 + it, y)|^{2k}
    double std_error = 0.0;  // iid formula; conservative for stratified draws
};

ZetaMomentSample zeta_empirical_moment(double T, double y, int k, std::size_t n, std::uint64_t seed,
                                       unsigned threads = 0);

/// Headerless "parameter,value" lines, 17 significant digits.
void write_family_csv(std::ostream& out, std::span<const std::pair<double, double>> rows);

}  // namespace eulerprod
