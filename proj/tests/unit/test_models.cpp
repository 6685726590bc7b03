#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "eulerprod/constants.hpp"
#include "eulerprod/error.hpp"
#include "eulerprod/models.hpp"
#include "eulerprod/special.hpp"

using namespace eulerprod;

namespace {

double i0_series(double t) {
    double term = 1, sum = 1;
    for (int m = 1; m < 300; ++m) {
        term *= (t / 2) * (t / 2) / (double(m) * m);
        sum += term;
    }
    return sum;
}

double i1_series(double t) {
    double term = t / 2, sum = term;
    for (int m = 1; m < 300; ++m) {
        term *= (t / 2) * (t / 2) / (double(m) * (m + 1));
        sum += term;
    }
    return sum;
}

// -sum_p sum_j log|1 - root/p| from the per-prime draws.
double direct_log_abs(const RandomModel& m, double y, std::uint64_t seed, std::uint64_t index) {
    ProductSampler s(m, y);
    double total = 0;
    for (const std::uint32_t p : s.primes()) {
        CounterRng rng(seed, index, p);
        for (const auto& a : sample_local(m, p, rng).roots) total -= std::log(std::abs(1.0 - a / double(p)));
    }
    return total;
}

}  // namespace

TEST_CASE("model factory") {
    CHECK(make_model("rademacher").degree == 1);
    CHECK(make_model("signs").kind == ModelKind::rademacher);
    CHECK(make_model("sym2").degree == 3);
    CHECK(make_model("sato_tate_symk", 4).degree == 5);
    CHECK(make_model("quadratic_char").p_dependent);
    CHECK_THROWS_AS(make_model("nope"), InvalidArgument);
    CHECK_THROWS_AS(make_model(ModelKind::sato_tate_symk, 0), DomainError);
    CHECK_THROWS_AS(make_model(ModelKind::custom), InvalidArgument);
}

TEST_CASE("closed-form mgfs") {
    for (double t : {0.0, 0.3, 2.0, 9.0, 25.0}) {
        CHECK(mgf(make_model("rademacher"), t) == doctest::Approx(std::cosh(t)).epsilon(1e-14));
        CHECK(mgf(make_model("unit_circle"), t) == doctest::Approx(i0_series(t)).epsilon(1e-13));
        if (t > 0) CHECK(mgf(make_model("sym1"), t) == doctest::Approx(2 * i1_series(t) / t).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mgf(make_model("quadratic_char"), 1.0), InvalidArgument);
    // p-dependent: E e^{t Re X} = 1 - 2w + 2w cosh t with w = p/(2(p+1))
    const double w = 7.0 / 16.0;
    CHECK(mgf(make_model("quadratic_char"), 1.5, 7u) == doctest::Approx(1 - 2 * w + 2 * w * std::cosh(1.5)));
}

TEST_CASE("law path agrees with closed forms") {
    for (const char* name : {"rademacher", "unit_circle", "sym1", "sym2", "sym3"}) {
        const RandomModel m = make_model(name);
        for (double t : {1e-4, 0.01, 0.5, 3.0, 40.0, 500.0})
            CHECK(law_log_mgf(m, t) == doctest::Approx(log_mgf(m, t)).epsilon(1e-10));
    }
}

TEST_CASE("A_X cross-paths") {
    CHECK(std::abs(constant_A_X(make_model("rademacher")).value - constant_C1().value) <= 1e-6);
    CHECK(std::abs(constant_A_X(make_model("unit_circle")).value - constant_C2().value) <= 1e-6);
    CHECK(std::abs(constant_A_X(make_model("sym1")).value - constant_A_k(1).value) <= 1e-6);
    CHECK_THROWS_AS(constant_A_X(make_model("quadratic_char")), DomainError);
}

TEST_CASE("custom model") {
    CustomModelSpec spec;
    spec.sampler = [](std::uint32_t, CounterRng& rng, std::span<std::complex<double>> roots) {
        roots[0] = rng.uniform() < 0.5 ? 1.0 : -1.0;
    };
    spec.mgf = [](double t) { return std::cosh(t); };
    // cosh overflows long before the A_X integral is done with large t
    CHECK_THROWS_AS(constant_A_X(make_custom_model(spec)), DomainError);
    spec.log_mgf = [](double t) { return log_cosh(t); };
    const RandomModel m = make_custom_model(spec);
    CHECK(std::abs(constant_A_X(m).value - C1_value()) <= 1e-6);
    // Same draws as the built-in signs model.
    CHECK(ProductSampler(m, 100).log_abs(3, 4) == doctest::Approx(ProductSampler(make_model("rademacher"), 100).log_abs(3, 4)).epsilon(1e-13));
    CHECK_THROWS_AS(make_custom_model(CustomModelSpec{}), InvalidArgument);
}

TEST_CASE("Sato-Tate sampling") {
    CHECK(sato_tate_cdf(std::numbers::pi / 2) == doctest::Approx(0.5));
    CHECK(sato_tate_cdf(0) == 0.0);
    for (double th = 0.05; th < std::numbers::pi; th += 0.3)
        CHECK(sato_tate_inverse_cdf(sato_tate_cdf(th)) == doctest::Approx(th).epsilon(1e-10));
    // mean of 2 cos(theta)^2 ... second moment of the trace is 1
    double m2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        CounterRng rng(9, i);
        const double c = 2 * std::cos(sato_tate_inverse_cdf(rng.uniform()));
        m2 += c * c;
    }
    CHECK(m2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("local samples") {
    const RandomModel m = make_model("sym3");
    CounterRng rng(1, 2, 3);
    const LocalSample s = sample_local(m, 3, rng);
    REQUIRE(s.roots.size() == 4);
    for (const auto& a : s.roots) CHECK(std::abs(a) == doctest::Approx(1.0));
    // symmetric powers: roots come in conjugate pairs, so X is real
    CHECK(std::abs(s.x_value.imag()) < 1e-14);
}

TEST_CASE("fast product sampler matches the per-prime definition") {
    for (const char* name : {"rademacher", "unit_circle", "sym2", "quadratic_char"}) {
        const RandomModel m = make_model(name);
        for (std::uint64_t i : {0u, 1u, 17u})
            CHECK(ProductSampler(m, 500).log_abs(42, i) == doctest::Approx(direct_log_abs(m, 500, 42, i)).epsilon(1e-12));
    }
}

TEST_CASE("seeded batches are bit-reproducible") {
    const RandomModel m = make_model("unit_circle");
    const auto a = sample_log_abs_batch(m, 1000, 2000, 11, 1);
    const auto b = sample_log_abs_batch(m, 1000, 2000, 11, 3);
    const auto c = sample_log_abs_batch(m, 1000, 2000, 12, 1);
    CHECK(a == b);
    CHECK(a != c);
    std::ostringstream s1, s2;
    write_samples_csv(s1, a);
    write_samples_csv(s2, b);
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().rfind("0,", 0) == 0);
    CHECK(sample_truncated_product(m, 1000, 11, 5).log_abs == a[5]);
}

TEST_CASE("truncation bias bound") {
    CHECK(truncation_bias_bound(make_model("sym2"), 101) == doctest::Approx(3.0 / 100));
    CHECK_THROWS_AS(ProductSampler(make_model("rademacher"), 1.5), DomainError);
}

TEST_CASE("condition checks") {
    const auto ok = validate_conditions(make_model("unit_circle"), 20000);
    REQUIRE(ok.checks.size() == 4);
    CHECK(ok.all_passed());
    const auto q = validate_conditions(make_model("quadratic_char"), 20000);
    CHECK_FALSE(q.checks[2].passed);
    CHECK_THROWS_AS(validate_conditions(make_model("rademacher"), 100), InvalidArgument);
}
