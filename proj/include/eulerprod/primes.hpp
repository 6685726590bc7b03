#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace eulerprod {

/// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Immutable ascending list of all primes up to `limit`.
class PrimeTable {
public:
    PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    std::uint64_t limit() const noexcept { return limit_; }
    std::size_t size() const noexcept { return primes_.size(); }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    /// Prefix of the table holding the primes <= x.
    std::span<const std::uint32_t> up_to(double x) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
};

/// Segmented sieve of Eratosthenes. Memory is O(sqrt(limit) + segment).
/// Throws DomainError when limit < 2 or limit >= 2^32.
PrimeTable sieve_primes(std::uint64_t limit);

/// Process-wide cached table covering at least `limit`. Safe to call concurrently.
std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit);

/// -sum_{p <= x} log(1 - 1/p), compensated summation in ascending prime order.
double mertens_log_sum(double x);

/// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace eulerprod
