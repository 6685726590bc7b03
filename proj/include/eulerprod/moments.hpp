#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eulerprod/models.hpp"

namespace eulerprod {

enum class MomentMethod { exact_product, asymptotic_thm, empirical_mc, diagonal };
std::string to_string(MomentMethod m);
MomentMethod moment_method_from_string(const std::string& s);

struct MomentEstimate {
    double r = 0.0;
    double log_moment = 0.0;
    MomentMethod method = MomentMethod::exact_product;
    double error_band = 0.0;        // on the log scale
    double relative_std_error = 0.0;  // empirical_mc only: SE(mean)/mean
    std::size_t n = 0;              // samples (empirical) or primes used (exact)
    std::vector<std::string> caveats;
};

/// How exact_moment_log obtains log E_p.
///   exact:       closed form / quadrature at every prime (default).
///   proof_split: quadrature for p <= sqrt(rd), h(rd/p) beyond, as in the
///                two-case split of the moment asymptotic's proof.
enum class LocalMethod { exact, proof_split };

/// log E_p, E_p = E prod_j (1 - 2 cos theta_j(p)/p + 1/p^2)^{-r/2}.
/// Discrete laws are summed exactly, continuous laws integrated to ~1e-13 relative.
double log_local_expectation(const RandomModel& model, std::uint32_t p, double r);
double local_expectation(const RandomModel& model, std::uint32_t p, double r);

/// sum_{p <= prime_limit} log E_p (ascending, compensated), with the tail bound
/// sum_{p > L} (rd)^2/p^2 ~ (rd)^2/(L log L) as error_band.
/// Throws DomainError when prime_limit < sqrt(rd).
MomentEstimate exact_moment_log(const RandomModel& model, double r, double prime_limit,
                                LocalMethod method = LocalMethod::exact, unsigned threads = 1);

/// rd log log(rd) + gamma rd + (rd / log rd)(A - 1), band c rd / log^2(rd).
/// The model form requires r > d^8 (DomainError otherwise) and uses constant_A_X.
MomentEstimate asymptotic_moment_log(const RandomModel& model, double r, double band_c = 3.0);
MomentEstimate asymptotic_moment_log(double A, int d, double r, double band_c = 3.0);

/// Density psi on [0, U] plus optional atoms {weight, location}.
/// `endpoint_singular` marks an inverse-square-root singularity at U.
struct PsiDistribution {
    std::string name;
    double U = 1.0;
    std::function<double(double)> density;
    std::vector<std::pair<double, double>> atoms;
    bool endpoint_singular = false;

    static PsiDistribution dirac(double at = 1.0);
    static PsiDistribution semicircle();  // (2/pi) sqrt(1 - t^2/4) on [0, 2]
    static PsiDistribution cm();          // delta(0)/2 + 1/(2 pi sqrt(1 - t^2/4)) on [0, 2]
};

struct PsiMoments {
    double N = 0.0;
    double M = 0.0;
    double mass = 0.0;
};

/// N = int t psi, M = int t log t psi (t log t := 0 at 0). Throws DomainError
/// if the total mass differs from 1 by more than 1e-8.
PsiMoments psi_moments(const PsiDistribution& psi);

struct LocalFactorExtremum {
    std::uint32_t p = 0;
    std::vector<std::complex<double>> roots;
    double phi_p = 0.0;
    double max_abs = 0.0;
};

/// max over t in [-pi, pi] of |prod_j (1 - e^{it} a_j / p)^{-1}|: 4097-point grid
/// then golden-section refinement to 1e-10. Ties go to the smallest |t|, then t > 0.
/// DomainError if some |a_j| > 1 (Ramanujan bound), InvalidArgument if d > 16.
LocalFactorExtremum local_factor_max(std::span<const std::complex<double>> roots, std::uint32_t p);

enum class BFlavor { max_over_angle, max_over_sign };

struct BConstant {
    double value = 1.0;
    double log_value = 0.0;
    double tail_bound = 0.0;  // heuristic, (d + N)^2 / (L log L)
    std::size_t primes = 0;
};

using RootProvider = std::function<std::vector<std::complex<double>>(std::uint32_t p)>;

/// prod_{p <= L} (max local factor) (1 - 1/p)^N.
BConstant b_constant(const RootProvider& roots, double psi_N, BFlavor flavor, double prime_limit);

enum class PsiFlavor { unit_circle, signs };

/// r N log log r + r (gamma N + log b) + (r / log r)(M + N (C - 1)), C = C2 (unit_circle)
/// or C1 (signs). The o(r/log r) remainder is unquantified; the band is the r/log^2 r scale.
MomentEstimate asymptotic_moment_log_psi(const PsiDistribution& psi, PsiFlavor flavor, double r, double b);

/// a(p^j) for j >= 1.
using CoefficientProvider = std::function<std::complex<double>(std::uint32_t p, int j)>;

struct DiagonalResult {
    double value = 1.0;
    double log_value = 0.0;
    double truncation_bound = 0.0;  // relative, summed over primes
    int j_cap = 0;
};

int default_j_cap(int k, double y);

/// prod_{p <= y} sum_{j <= j_cap} |c_k(p^j)|^2 / p^{2j}; j_cap <= 0 selects default_j_cap.
/// DomainError if |a(p)| >= p for some p <= y.
DiagonalResult diagonal_moment(const CoefficientProvider& a, double y, int k, int j_cap = 0);
/// prod_{p <= y} [1 + p/(p+1) sum_{1 <= j <= j_cap} Re c_k(p^{2j}) / p^{2j}].
DiagonalResult quadratic_diagonal_moment(const CoefficientProvider& a, double y, int k, int j_cap = 0);

/// Monte Carlo E|L|^r from log|L| samples, log-sum-exp, band 3 SE / mean.
/// InvalidArgument on an empty batch; a caveat is attached below 100 samples.
MomentEstimate empirical_moment(std::span<const double> log_abs, double r);

}  // namespace eulerprod
