#include "oracles.hpp"

#include "psp/error.hpp"
#include "psp/heath_brown.hpp"

#include <doctest.h>

#include <map>

using namespace psp;

namespace {

// The identity evaluated by brute force over all factorizations
// n = d_1 ... d_j m_1 ... m_{j-1} l with each d_i <= Z, as a real number.
double brute_identity(std::uint64_t n, int J, std::uint64_t Z)
{
    std::vector<std::uint64_t> divisors;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0)
            divisors.push_back(d);

    // mu_Z^{*j}(d) and tau_{j-1}(d) for every divisor d of n.
    std::map<std::uint64_t, std::int64_t> mu_pow, tau;
    for (const auto d : divisors)
        mu_pow[d] = (d <= Z) ? oracle::mobius(d) : 0;
    for (const auto d : divisors)
        tau[d] = d == 1 ? 1 : 0;
    double total = 0;
    std::int64_t binom = J;
    for (int j = 1; j <= J; ++j) {
        double term = 0;
        for (const auto d : divisors) {
            if (mu_pow[d] == 0)
                continue;
            const std::uint64_t m = n / d;
            for (const auto e : divisors)
                if (m % e == 0 && tau[m / e] != 0)
                    term += static_cast<double>(mu_pow[d] * tau[m / e]) * std::log(static_cast<double>(e));
        }
        total += (j % 2 == 1 ? 1.0 : -1.0) * static_cast<double>(binom) * term;
        binom = binom * (J - j) / (j + 1);

        std::map<std::uint64_t, std::int64_t> next_mu, next_tau;
        for (const auto a : divisors) {
            std::int64_t s = 0, t = 0;
            for (const auto b : divisors) {
                if (a % b != 0)
                    continue;
                if (b <= Z)
                    s += oracle::mobius(b) * mu_pow[a / b];
                t += tau[a / b];
            }
            next_mu[a] = s;
            next_tau[a] = t;
        }
        mu_pow = std::move(next_mu);
        tau = std::move(next_tau);
    }
    return total;
}

} // namespace

TEST_CASE("parameters")
{
    CHECK(HbParams::minimal_cutoff(10'000, 2) == 142);
    CHECK(HbParams::minimal_cutoff(10'000, 3) == 28);
    CHECK(HbParams::minimal_cutoff(4, 3) == 2);
    HbParams p{2, 10'000, 141};
    CHECK_THROWS_AS(p.validate(), PreconditionError);
    p.Z = 142;
    CHECK_NOTHROW(p.validate());
    p.J = 5;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
    p.J = 0;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
}

TEST_CASE("reconstruction at single points")
{
    const SieveTable t(1000);
    const auto hb2 = hb_terms(t, {2, 10, HbParams::minimal_cutoff(10, 2)});
    CHECK(hb_reconstruct(hb2, 12) == 0.0);
    CHECK(hb_reconstruct(hb2, 16) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(hb_reconstruct(hb2, 17) == doctest::Approx(std::log(17.0)).epsilon(1e-12));
    CHECK_THROWS_AS(hb_reconstruct(hb2, 10), PreconditionError);
    CHECK_THROWS_AS(hb_reconstruct(hb2, 21), PreconditionError);
    CHECK_THROWS_AS(hb_terms(t, {2, 10, 3}), PreconditionError);
}

TEST_CASE("matches the brute-force identity")
{
    const SieveTable t(400);
    for (const int J : {1, 2, 3, 4}) {
        for (const std::uint64_t Z : {HbParams::minimal_cutoff(100, J), std::uint64_t{200}}) {
            const auto hb = hb_terms(t, {J, 100, Z});
            for (std::uint64_t n = 101; n <= 200; ++n)
                CHECK(hb_reconstruct(hb, n) == doctest::Approx(brute_identity(n, J, Z)).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("identity equals Lambda on (x, 2x]")
{
    const SieveTable t(20'000);
    for (const int J : {2, 3}) {
        HbParams p{J, 10'000, HbParams::minimal_cutoff(10'000, J)};
        const auto r = hb_verify(t, p);
        CHECK(r.checked == 10'000);
        CHECK(r.mismatches == 0);
    }
    const auto hb = hb_terms(t, {3, 10'000, HbParams::minimal_cutoff(10'000, 3)});
    for (std::uint64_t n = 10'001; n <= 20'000; n += 37)
        CHECK(hb_reconstruct(hb, n) == doctest::Approx(oracle::von_mangoldt(n)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("block classification")
{
    CHECK(classify_block(100, 3, 10, 50) == BlockType::type1);
    CHECK(classify_block(5, 3, 10, 50) == BlockType::type2);
    CHECK(classify_block(3, 3, 10, 50) == BlockType::neither);
    CHECK(classify_block(10, 3, 10, 50) == BlockType::neither);
    CHECK(classify_block(50, 3, 10, 50) == BlockType::neither);
    CHECK(to_string(BlockType::type2) == "TypeII");
    CHECK_THROWS_AS(classify_block(5, 2, 10, 50), PreconditionError);
    CHECK_THROWS_AS(classify_block(5, 10, 10, 50), PreconditionError);
    CHECK_THROWS_AS(classify_block(5, 3, 50, 50), PreconditionError);
}

TEST_CASE("hypothesis report")
{
    // U = 3, Z = 36, V = 1000, x = 64 * 36^2 * 3.
    CHECK(hb_hypothesis_violations(248'832, 3, 1000, 36).empty());
    const auto v = hb_hypothesis_violations(1000, 3, 5, 20);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == "x >= 64 Z^2 U");
    CHECK(v[1] == "Z >= 4 U^2");
    CHECK(v[2] == "V^3 >= 32 x");
}
