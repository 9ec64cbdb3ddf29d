#include "oracles.hpp"

#include "psp/balog_friedlander.hpp"
#include "psp/error.hpp"

#include <doctest.h>

using namespace psp;

namespace {

const SieveTable& table()
{
    static const SieveTable t(1 << 18);
    return t;
}

double naive(std::uint64_t n, double c, double alpha)
{
    const auto in = oracle::ps_set(static_cast<std::int64_t>(n), c);
    const long double gam = 1.0L / static_cast<long double>(c);
    std::complex<long double> acc = 0;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (!oracle::is_prime(p))
            continue;
        const long double pl = static_cast<long double>(p);
        const long double w = std::log(pl) * ((in[p] ? c * std::pow(pl, 1.0L - gam) : 0.0L) - 1.0L);
        const auto e = oracle::e(static_cast<long double>(alpha) * pl);
        acc += w * std::complex<long double>(e.real(), e.imag());
    }
    return static_cast<double>(std::abs(acc));
}

} // namespace

TEST_CASE("discrepancy against a direct evaluation")
{
    for (const double c : {1.05, 1.1, 1.5})
        for (const double alpha : {0.0, 0.5, 1.0 / 3.0, std::sqrt(2.0) - 1.0}) {
            const double got = bf_discrepancy(table(), 50'000, GammaExponent::from_c(c), alpha);
            CHECK(got == doctest::Approx(naive(50'000, c, alpha)).epsilon(1e-8).scale(1.0));
        }
    CHECK_THROWS_AS(bf_discrepancy(table(), (1 << 18) + 1, GammaExponent::from_c(1.1), 0.0), PreconditionError);
}

TEST_CASE("discrepancy vanishes as c -> 1")
{
    // Every integer is a PS number and the weights tend to log p.
    const double d = bf_discrepancy(table(), 1 << 18, GammaExponent::from_c(1.0 + 1e-12), 0.3);
    CHECK(d / static_cast<double>(1 << 18) <= 1e-9);
}

TEST_CASE("discrepancy is 1-periodic in alpha")
{
    const auto g = GammaExponent::from_c(1.1);
    const BfWeights w(table(), 100'000, g);
    CHECK(w.discrepancy(0.25) == doctest::Approx(w.discrepancy(1.25)).epsilon(1e-10));
    CHECK(w.discrepancy(0.0) == w.discrepancy(-3.0));
}

TEST_CASE("alpha scan")
{
    const auto g = GammaExponent::from_c(1.1);
    const std::uint64_t n = 1 << 16;
    const auto r = alpha_scan(table(), n, g, 64);
    // 64 grid points plus Farey fractions up to 20, merged.
    CHECK(r.rows.front().alpha == 0.0);
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        CHECK(r.rows[i - 1].alpha < r.rows[i].alpha);
    CHECK(r.rows.back().alpha < 1.0);
    CHECK(r.max_discrepancy >= bf_discrepancy(table(), n, g, 0.0));
    bool has_third = false, has_grid = false;
    for (const auto& row : r.rows) {
        has_third = has_third || row.alpha == 1.0 / 3.0;
        has_grid = has_grid || row.alpha == 5.0 / 64.0;
        CHECK(row.discrepancy <= r.max_discrepancy);
    }
    CHECK(has_third);
    CHECK(has_grid);

    const auto threaded = alpha_scan(table(), n, g, 64, Parallelism{3});
    CHECK(threaded.max_discrepancy == r.max_discrepancy);
    CHECK(threaded.argmax_alpha == r.argmax_alpha);

    const auto doubled = alpha_scan(table(), n, g, 128);
    CHECK(std::abs(doubled.max_discrepancy - r.max_discrepancy) <= 0.25 * r.max_discrepancy);

    CHECK_THROWS_AS(alpha_scan(table(), n, g, 0), PreconditionError);
    CHECK_THROWS_AS(alpha_scan(table(), n, g, 10'001), PreconditionError);
}
