#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eulerprod/constants.hpp"

namespace eulerprod {

enum class ModelKind { rademacher, unit_circle, sato_tate_symk, quadratic_char, custom };

std::string to_string(ModelKind kind);

inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: a splitmix64 stream whose starting point is a hash
/// of (seed, a, b). Streams for different keys are independent for all
/// practical purposes, and a draw depends only on its key and position, never
/// on what other streams did.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept
        : state_(mix64(mix64(seed ^ mix64(a)) ^ (b * 0xd1b54a32d192ed03ULL))) {}
    std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform on the open interval (0, 1).
    double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// User-supplied law. The sampler fills `roots` (d complex numbers of modulus <= 1,
/// the e^{i theta_j(p)}); the mgf is m(t) = E e^{Re(X) t}.
struct CustomModelSpec {
    int degree = 1;
    bool p_dependent = false;
    std::function<void(std::uint32_t p, CounterRng& rng, std::span<std::complex<double>> roots)> sampler;
    std::function<double(double t)> mgf;
    /// Optional log of mgf; supply it when mgf overflows at large t (A_X needs t -> inf).
    std::function<double(double t)> log_mgf;
    /// Optional: log E prod_j |1 - root_j/p|^{-r}. Needed only for exact moments.
    std::function<double(std::uint32_t p, double r)> log_local_expectation;
};

struct RandomModel {
    ModelKind kind = ModelKind::unit_circle;
    int degree = 1;
    int k = 0;  // symmetric power, sato_tate_symk only
    bool p_dependent = false;
    std::shared_ptr<const CustomModelSpec> custom;

    std::string name() const;
};

/// Throws DomainError for k < 1 with sato_tate_symk, InvalidArgument for a
/// custom kind (use make_custom_model).
RandomModel make_model(ModelKind kind, int k = 0);
/// "rademacher", "unit_circle", "sato_tate_symk", "quadratic_char"; also "symK" shorthand.
RandomModel make_model(const std::string& name, int k = 0);
RandomModel make_custom_model(CustomModelSpec spec);

struct LocalSample {
    std::uint32_t p = 0;
    std::vector<double> angles;                // in [-pi, pi]; 0 for a vanishing root
    std::vector<std::complex<double>> roots;   // e^{i theta_j}, or 0 (quadratic_char at p | d)
    std::complex<double> x_value;              // sum_j roots / d
};

struct ProductSample {
    double y = 0.0;
    double log_abs = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

/// m(t) = E e^{Re(X) t}. p is required exactly when the model is p-dependent.
double mgf(const RandomModel& model, double t, std::optional<std::uint32_t> p = std::nullopt);
/// log m(t), finite for all t >= 0.
double log_mgf(const RandomModel& model, double t, std::optional<std::uint32_t> p = std::nullopt);

/// log m(t) computed from the law of Re(X) alone (atoms, or an angle integral),
/// independent of the closed forms used by mgf().
double law_log_mgf(const RandomModel& model, double t);

/// A_X = 1 + int_0^1 h/t^2 + int_1^inf (h - t)/t^2 via law_log_mgf.
/// Throws DomainError for p-dependent models (Re X not identically distributed, check C3).
ConstantReport constant_A_X(const RandomModel& model);

/// Sato-Tate inverse CDF: solves (theta - sin theta cos theta)/pi = u on [0, pi]
/// by bisection to 1e-12.
double sato_tate_inverse_cdf(double u);
double sato_tate_cdf(double theta);

/// One draw of the local angles at p. The stream should be dedicated to p.
LocalSample sample_local(const RandomModel& model, std::uint32_t p, CounterRng& rng);

/// Precomputed sampler for log|L(1, X; y)| = -sum_{p<=y} sum_j log|1 - e^{i theta_j(p)}/p|.
/// The draw for (seed, index) uses one stream per prime, keyed on
/// (seed, index, p), and accumulates in ascending p.
class ProductSampler {
public:
    ProductSampler(RandomModel model, double y);
    double log_abs(std::uint64_t seed, std::uint64_t index) const;
    ProductSample sample(std::uint64_t seed, std::uint64_t index) const;
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }
    const RandomModel& model() const noexcept { return model_; }
    double y() const noexcept { return y_; }

private:
    RandomModel model_;
    double y_;
    std::vector<std::uint32_t> primes_;
    std::vector<double> a_, b_, c_;  // per-prime tables, meaning depends on kind
};

ProductSample sample_truncated_product(const RandomModel& model, double y, std::uint64_t seed,
                                       std::uint64_t index = 0);

/// log_abs for indices [0, n). Output is identical for any thread count.
std::vector<double> sample_log_abs_batch(const RandomModel& model, double y, std::size_t n, std::uint64_t seed,
                                         unsigned threads = 0);

/// Bias bound sum_{p>y} d/p^2 < d/(y-1) from truncating at y.
double truncation_bias_bound(const RandomModel& model, double y);

/// Headerless "index,log_abs" lines, 17 significant digits.
void write_samples_csv(std::ostream& out, std::span<const double> log_abs);

struct ConditionCheck {
    std::string name;
    bool passed = false;
    double statistic = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ConditionReport {
    std::string model;
    std::size_t n_samples = 0;
    std::vector<ConditionCheck> checks;  // C1..C4 in order
    double c4_c = 0.0, c4_alpha = 0.0;   // fitted P(all |theta_j| <= eps) ~ c eps^alpha
    bool all_passed() const;
};

/// Monte Carlo check of C1-C4: mean zero, independence, identical law, small-angle mass. `tol` is in standard errors (C1, C2).
/// C3 uses a two-sample KS test on Re X between p = 2 and p = 1009 at level 1e-3.
/// Throws InvalidArgument for n_samples < 10^4.
ConditionReport validate_conditions(const RandomModel& model, std::size_t n_samples, double tol = 4.0,
                                    std::uint64_t seed = 1);

}  // namespace eulerprod
