#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "eulerprod/error.hpp"
#include "eulerprod/primes.hpp"

using namespace eulerprod;

namespace {

bool is_prime_td(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("pi(10^6) matches trial division") {
    std::size_t count = 0;
    for (std::uint64_t n = 2; n <= 1000000; ++n) count += is_prime_td(n);
    const auto table = sieve_primes(1000000);
    CHECK(table.size() == count);
    CHECK(count == 78498);
}

TEST_CASE("sieve agrees with trial division across segment boundaries") {
    const auto table = sieve_primes(300000);
    std::vector<std::uint32_t> expect;
    for (std::uint32_t n = 2; n <= 300000; ++n)
        if (is_prime_td(n)) expect.push_back(n);
    REQUIRE(table.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(table.primes()[i] == expect[i]);
}

TEST_CASE("up_to takes the prefix at or below x") {
    const auto table = sieve_primes(100);
    const auto p10 = table.up_to(10);
    CHECK(p10.size() == 4);
    CHECK(p10.back() == 7);
    CHECK(table.up_to(11).size() == 5);
    CHECK(table.up_to(1.5).empty());
    CHECK(table.up_to(1e9).size() == 25);
}

TEST_CASE("bad limits") {
    CHECK_THROWS_AS(sieve_primes(1), DomainError);
    CHECK_THROWS_AS(sieve_primes(std::uint64_t{1} << 33), DomainError);
    CHECK_THROWS_AS(mertens_log_sum(1.0), DomainError);
}

TEST_CASE("shared table covers the request") {
    const auto a = shared_primes(1000);
    const auto b = shared_primes(500);
    CHECK(b->limit() >= 500);
    CHECK(b->up_to(500).size() == 95);
    CHECK(a->up_to(1000).size() == 168);
}

TEST_CASE("mertens sum") {
    double direct = 0.0;
    for (double p : {2.0, 3.0, 5.0, 7.0}) direct -= std::log(1.0 - 1.0 / p);
    CHECK(mertens_log_sum(10) == doctest::Approx(direct).epsilon(1e-15));

    const double gap4 = std::abs(mertens_log_sum(1e4) - std::log(std::log(1e4)) - kEulerGamma);
    const double gap6 = std::abs(mertens_log_sum(1e6) - std::log(std::log(1e6)) - kEulerGamma);
    CHECK(gap6 <= 0.01);
    CHECK(gap6 < gap4);
}

TEST_CASE("compensated sum keeps small terms") {
    CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1000.0);
}
