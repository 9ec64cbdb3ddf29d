#include "oracles.hpp"

#include "psp/error.hpp"
#include "psp/sieve.hpp"

#include <doctest.h>

#include <numeric>

using namespace psp;

TEST_CASE("small tables")
{
    const SieveTable t10(10);
    const auto p = t10.primes();
    CHECK(std::vector<std::uint64_t>(p.begin(), p.end()) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(SieveTable(100).prime_count(100) == 25);
    CHECK(SieveTable(2).prime_count(2) == 1);
    CHECK_THROWS_AS(SieveTable(1), PreconditionError);
    CHECK_THROWS_AS(SieveTable(SieveTable::kMaxLimit + 1), PreconditionError);
}

TEST_CASE("pi(10^6) and agreement with trial division")
{
    const SieveTable t(1'000'000);
    CHECK(t.prime_count(1'000'000) == 78498);
    for (std::uint64_t n = 2; n <= 200'000; ++n)
        REQUIRE(t.is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("segment boundaries and threads do not change the table")
{
    const std::uint64_t limit = 3 * SieveTable::kSegment + 12345;
    const SieveTable one(limit, Parallelism{1});
    const SieveTable four(limit, Parallelism{4});
    REQUIRE(one.primes().size() == four.primes().size());
    CHECK(std::equal(one.primes().begin(), one.primes().end(), four.primes().begin()));
    for (std::uint64_t k = 1; k <= 3; ++k) {
        const std::uint64_t b = k * SieveTable::kSegment;
        for (std::uint64_t n = b - 50; n <= b + 50; ++n) {
            CHECK(one.is_prime(n) == oracle::is_prime(n));
            CHECK(one.least_prime_factor(n) == four.least_prime_factor(n));
        }
    }
}

TEST_CASE("least prime factor and factorization")
{
    const SieveTable t(2'000'000);
    for (std::uint64_t n = 2; n <= 2'000'000; n += 997) {
        const auto f = oracle::factor(n);
        CHECK(t.least_prime_factor(n) == f.front().p);
        const auto g = t.factorize(n);
        REQUIRE(g.size() == f.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(g[i].prime == f[i].p);
            CHECK(g[i].exponent == f[i].e);
        }
    }
    // A prime square near the top exercises large least prime factors.
    CHECK(t.least_prime_factor(1'999'999) == oracle::factor(1'999'999).front().p);
    CHECK(t.least_prime_factor(1409 * 1409) == 1409);
}

TEST_CASE("von Mangoldt and Moebius")
{
    const SieveTable t(1'000'000);
    CHECK(von_mangoldt(t, 8) == doctest::Approx(std::log(2.0)));
    CHECK(von_mangoldt(t, 6) == 0.0);
    CHECK(von_mangoldt(t, 97) == doctest::Approx(std::log(97.0)));
    CHECK(mobius(t, 1) == 1);
    CHECK(mobius(t, 4) == 0);
    CHECK(mobius(t, 6) == 1);
    CHECK(mobius(t, 30) == -1);
    for (std::uint64_t n = 2; n <= 30'000; ++n) {
        REQUIRE(von_mangoldt(t, n) == oracle::von_mangoldt(n));
        REQUIRE(mobius(t, n) == oracle::mobius(n));
    }
    CHECK_THROWS_AS(von_mangoldt(t, 1), PreconditionError);
    CHECK_THROWS_AS(mobius(t, 0), PreconditionError);
    CHECK_THROWS_AS(mobius(t, 1'000'001), PreconditionError);
}

TEST_CASE("Chebyshev and Mertens sanity")
{
    const SieveTable t(10'000'000);
    CompensatedSum psi_sum;
    std::int64_t mertens = 0;
    for (std::uint64_t n = 1; n <= 10'000'000; ++n) {
        if (n >= 2)
            psi_sum += von_mangoldt(t, n);
        mertens += mobius(t, n);
        if (n == 100'000 || n == 1'000'000 || n == 10'000'000)
            CHECK(static_cast<double>(std::abs(mertens)) <= std::pow(static_cast<double>(n), 0.6));
    }
    const double ratio = psi_sum.value() / 1e7;
    CHECK(ratio >= 0.996);
    CHECK(ratio <= 1.004);
}

TEST_CASE("prime_sum_ap")
{
    const SieveTable t(100'000);
    auto one = [](std::uint64_t) { return Complex(1.0); };
    CHECK(prime_sum_ap(t, 10, 1, 0, one).real() == 4.0);
    CHECK(prime_sum_ap(t, 100, 4, 1, one).real() == 11.0);
    CHECK(prime_sum_ap(t, 10, 2, 0, one).real() == 1.0);
    CHECK_THROWS_AS(prime_sum_ap(t, 100'001, 1, 0, one), PreconditionError);

    auto ident = [](std::uint64_t p) { return Complex(static_cast<double>(p)); };
    for (const std::uint64_t q : {3u, 10u, 12u}) {
        double total = 0;
        for (std::uint64_t a = 0; a < q; ++a)
            total += prime_sum_ap(t, 100'000, q, a, ident).real();
        CHECK(total == prime_sum_ap(t, 100'000, 1, 0, ident).real());
    }

    auto w = [](std::uint64_t p) { return Complex(std::log(static_cast<double>(p)), 1.0 / static_cast<double>(p)); };
    for (const std::uint64_t q : {3u, 10u, 12u}) {
        // Summing the per-class results must reproduce the q = 1 total, which
        // is itself a compensated sum of the same terms.
        ComplexCompensatedSum by_class;
        for (std::uint64_t a = 0; a < q; ++a)
            by_class += prime_sum_ap(t, 100'000, q, a, w);
        const Complex all = prime_sum_ap(t, 100'000, 1, 0, w);
        CHECK(std::abs(by_class.value() - all) <= 1e-9 * std::abs(all));
    }
}
