#include "eulerprod/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "eulerprod/error.hpp"

namespace eulerprod {

namespace {

constexpr std::uint64_t kSegmentSize = 1u << 18;
constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull;

std::vector<std::uint32_t> simple_sieve(std::uint32_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

}  // namespace

std::span<const std::uint32_t> PrimeTable::up_to(double x) const {
    if (!(x >= 2.0)) return {};
    const auto bound = x >= static_cast<double>(kMaxLimit) ? kMaxLimit
                                                           : static_cast<std::uint64_t>(std::floor(x));
    auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.data(), static_cast<std::size_t>(it - primes_.begin())};
}

PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2 (empty table)");
    if (limit > kMaxLimit) throw DomainError("sieve_primes: limit exceeds 2^32 - 1");

    const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const std::vector<std::uint32_t> base = simple_sieve(root);

    std::vector<std::uint32_t> primes;
    if (limit > 1000) {
        const double est = static_cast<double>(limit) / std::log(static_cast<double>(limit));
        primes.reserve(static_cast<std::size_t>(est * 1.15) + 16);
    }

    std::vector<char> composite(kSegmentSize);
    for (std::uint64_t low = 2; low <= limit; low += kSegmentSize) {
        const std::uint64_t high = std::min(low + kSegmentSize - 1, limit);
        std::fill(composite.begin(), composite.end(), 0);
        for (const std::uint32_t p : base) {
            const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
            if (pp > high) break;
            std::uint64_t start = std::max(pp, (low + p - 1) / p * p);
            for (std::uint64_t j = start; j <= high; j += p) composite[j - low] = 1;
        }
        for (std::uint64_t n = low; n <= high; ++n)
            if (!composite[n - low]) primes.push_back(static_cast<std::uint32_t>(n));
    }
    return PrimeTable(limit, std::move(primes));
}

std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit) {
    static std::mutex mutex;
    static std::shared_ptr<const PrimeTable> cached;
    std::lock_guard lock(mutex);
    if (!cached || cached->limit() < limit) {
        // Grow geometrically so a sweep over increasing limits does not re-sieve every time.
        std::uint64_t target = std::max<std::uint64_t>(limit, 1u << 16);
        if (cached) target = std::max(target, std::min(kMaxLimit, cached->limit() * 2));
        cached = std::make_shared<const PrimeTable>(sieve_primes(std::min(target, kMaxLimit)));
    }
    return cached;
}

double mertens_log_sum(double x) {
    if (!(x >= 2.0)) throw DomainError("mertens_log_sum: x must be >= 2");
    const auto table = shared_primes(static_cast<std::uint64_t>(std::floor(x)));
    CompensatedSum sum;
    for (const std::uint32_t p : table->up_to(x)) sum.add(-std::log1p(-1.0 / p));
    return sum.value();
}

}  // namespace eulerprod
