#include "psp/ps_sequence.hpp"

#include "psp/error.hpp"

#include <mpfr.h>

#include <numeric>
#include <string>

namespace psp {

int ps_indicator(std::int64_t m, const GammaExponent& g)
{
    if (m < 1)
        throw PreconditionError("ps_indicator: m must be positive");
    return static_cast<int>(ceil_root(m + 1, g.c()) - ceil_root(m, g.c()));
}

double ps_expansion_residual(std::int64_t m, const GammaExponent& g)
{
    if (m < 2)
        throw PreconditionError("ps_expansion_residual: m must be >= 2");
    const double gam = g.gamma();
    const double md = static_cast<double>(m);
    const std::int64_t ceil0 = ceil_root(m, g.c());
    const std::int64_t ceil1 = ceil_root(m + 1, g.c());
    const auto indicator = static_cast<double>(ceil1 - ceil0);

    // psi(-t) = ceil(t) - t - 1/2, with ceil(t) taken from the certified
    // root so that a near-integer t cannot flip psi by a whole unit.
    const double t0 = std::pow(md, gam);
    const double t1 = std::pow(md + 1.0, gam);
    const double psi0 = (static_cast<double>(ceil0) - t0) - 0.5;
    const double psi1 = (static_cast<double>(ceil1) - t1) - 0.5;
    return indicator - (gam * t0 / md + psi1 - psi0);
}

namespace {

void require_in_table(const SieveTable& table, std::uint64_t x, const char* what)
{
    if (x > table.limit())
        throw PreconditionError(std::string(what) + ": x = " + std::to_string(x) + " exceeds sieve limit " +
                                std::to_string(table.limit()));
}

double headline(std::uint64_t x, double gamma)
{
    if (x < 2)
        return 0.0;
    const double xd = static_cast<double>(x);
    return std::pow(xd, gamma) / std::log(xd);
}

void finish(PsCountReport& r)
{
    r.ratio = r.main_term > 0 ? static_cast<double>(r.count) / r.main_term : 0.0;
}

} // namespace

PsCountReport ps_prime_count(const SieveTable& table, std::uint64_t x, const GammaExponent& g)
{
    require_in_table(table, x, "ps_prime_count");
    PsCountReport r;
    r.x = x;
    r.c = g.c();
    CompensatedSum main;
    for (const std::uint64_t p : table.primes_up_to(x)) {
        r.count += static_cast<std::uint64_t>(ps_indicator(static_cast<std::int64_t>(p), g));
        main += std::pow(static_cast<double>(p), g.gamma() - 1.0);
    }
    r.main_term = g.gamma() * main.value();
    r.headline_term = headline(x, g.gamma());
    finish(r);
    return r;
}

namespace {

void check_progression(std::uint64_t q, std::uint64_t a)
{
    if (q < 1 || q > 10'000)
        throw PreconditionError("modulus q must lie in [1, 10^4]");
    if (a >= q)
        throw PreconditionError("residue a must satisfy 0 <= a < q");
    if (std::gcd(a, q) != 1)
        throw PreconditionError("gcd(a, q) must be 1, got a = " + std::to_string(a) + ", q = " + std::to_string(q));
}

} // namespace

double ap_main_term(const SieveTable& table, std::uint64_t x, const GammaExponent& g, std::uint64_t q,
                    std::uint64_t a)
{
    require_in_table(table, x, "ap_main_term");
    check_progression(q, a);
    const double gam = g.gamma();
    const double x_pow = std::pow(static_cast<double>(x), gam - 1.0);
    std::uint64_t pi = 0;
    // int_2^x u^{g-2} pi(u;q,a) du = sum_{p <= x} (x^{g-1} - p^{g-1}) / (g - 1).
    CompensatedSum integral;
    for (const std::uint64_t p : table.primes_up_to(x)) {
        if (p % q != a)
            continue;
        ++pi;
        integral += (x_pow - std::pow(static_cast<double>(p), gam - 1.0)) / (gam - 1.0);
    }
    return gam * x_pow * static_cast<double>(pi) - gam * (gam - 1.0) * integral.value();
}

PsCountReport ps_prime_count_ap(const SieveTable& table, std::uint64_t x, const GammaExponent& g,
                                std::uint64_t q, std::uint64_t a)
{
    require_in_table(table, x, "ps_prime_count_ap");
    check_progression(q, a);
    PsCountReport r;
    r.x = x;
    r.c = g.c();
    r.q = q;
    r.a = a;
    for (const std::uint64_t p : table.primes_up_to(x))
        if (p % q == a)
            r.count += static_cast<std::uint64_t>(ps_indicator(static_cast<std::int64_t>(p), g));
    r.main_term = ap_main_term(table, x, g, q, a);
    r.headline_term = headline(x, g.gamma());
    finish(r);
    return r;
}

BeattyParams BeattyParams::make(double alpha, double beta, AlphaKind kind)
{
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw PreconditionError("Beatty parameters must be finite");
    if (!(alpha > 1.0))
        throw PreconditionError("Beatty alpha must exceed 1");
    for (int q = 1; q <= 10'000; ++q) {
        const double aq = alpha * q;
        if (std::abs(aq - std::nearbyint(aq)) < 1e-12 * q)
            throw PreconditionError("Beatty alpha is within 1e-12 of a rational with denominator " +
                                    std::to_string(q));
    }
    return {alpha, beta, kind};
}

namespace {

constexpr double kBeattyMargin = 1e-9;

bool beatty_member_precise(std::int64_t m, const BeattyParams& b)
{
    constexpr mpfr_prec_t prec = 256;
    mpfr_t alpha, lo, hi, n0;
    mpfr_inits2(prec, alpha, lo, hi, n0, static_cast<mpfr_ptr>(nullptr));
    switch (b.kind) {
    case AlphaKind::sqrt2:
        mpfr_sqrt_ui(alpha, 2, MPFR_RNDN);
        break;
    case AlphaKind::golden_ratio:
        mpfr_sqrt_ui(alpha, 5, MPFR_RNDN);
        mpfr_add_ui(alpha, alpha, 1, MPFR_RNDN);
        mpfr_div_2ui(alpha, alpha, 1, MPFR_RNDN);
        break;
    case AlphaKind::decimal:
        mpfr_set_d(alpha, b.alpha, MPFR_RNDN);
        break;
    }
    mpfr_set_si(lo, m, MPFR_RNDN);
    mpfr_sub_d(lo, lo, b.beta, MPFR_RNDN);
    mpfr_add_ui(hi, lo, 1, MPFR_RNDN);
    mpfr_div(lo, lo, alpha, MPFR_RNDN);
    mpfr_div(hi, hi, alpha, MPFR_RNDN);
    mpfr_ceil(n0, lo);
    if (mpfr_cmp_ui(n0, 1) < 0)
        mpfr_set_ui(n0, 1, MPFR_RNDN);
    const bool member = mpfr_less_p(n0, hi) != 0;
    mpfr_clears(alpha, lo, hi, n0, static_cast<mpfr_ptr>(nullptr));
    return member;
}

} // namespace

bool beatty_member(std::int64_t m, const BeattyParams& b)
{
    if (m < 1)
        throw PreconditionError("beatty_member: m must be positive");
    const double md = static_cast<double>(m);
    const double lo = (md - b.beta) / b.alpha;
    const double hi = (md + 1.0 - b.beta) / b.alpha;
    const double scale = kBeattyMargin * std::max(1.0, std::abs(hi));
    if (std::abs(lo - std::nearbyint(lo)) < scale || std::abs(hi - std::nearbyint(hi)) < scale)
        return beatty_member_precise(m, b);
    const double n0 = std::max(1.0, std::ceil(lo));
    return n0 < hi;
}

PsCountReport ps_beatty_prime_count(const SieveTable& table, std::uint64_t x, const GammaExponent& g,
                                    const BeattyParams& b)
{
    require_in_table(table, x, "ps_beatty_prime_count");
    PsCountReport r;
    r.x = x;
    r.c = g.c();
    for (const std::uint64_t p : table.primes_up_to(x)) {
        const auto m = static_cast<std::int64_t>(p);
        if (beatty_member(m, b) && ps_indicator(m, g) == 1)
            ++r.count;
    }
    r.headline_term = headline(x, g.gamma());
    r.main_term = r.headline_term / b.alpha;
    finish(r);
    return r;
}

SingularSeriesResult singular_series(std::uint64_t n, std::uint64_t truncation)
{
    if (n < 3)
        throw PreconditionError("singular_series: N must be >= 3");
    if (truncation < 100)
        throw PreconditionError("singular_series: truncation P must be >= 100");
    SingularSeriesResult r{n, truncation, 0.0, 2.0 / static_cast<double>(truncation)};
    if (n % 2 == 0)
        return r;

    const SieveTable primes(truncation);
    CompensatedSum log_product;
    for (const std::uint64_t p : primes.primes()) {
        const double pm1 = static_cast<double>(p - 1);
        if (n % p == 0)
            log_product += std::log1p(-1.0 / (pm1 * pm1));
        else
            log_product += std::log1p(1.0 / (pm1 * pm1 * pm1));
    }
    r.value = std::exp(log_product.value());
    return r;
}

Goldbach3Result goldbach3_count(const SieveTable& table, std::uint64_t n, double c1, double c2, double c3,
                                std::uint64_t series_truncation)
{
    if (n < 10'000 || n > 1'000'000)
        throw PreconditionError("goldbach3_count: N must lie in [10^4, 10^6]");
    require_in_table(table, n, "goldbach3_count");
    for (const double c : {c1, c2, c3})
        if (!(c > 1.0) || !(c < 1.2))
            throw PreconditionError("goldbach3_count: each c_i must lie in (1, 6/5)");

    const auto g1 = GammaExponent::from_c(c1);
    const auto g2 = GammaExponent::from_c(c2);
    const auto g3 = GammaExponent::from_c(c3);

    auto members = [&](const GammaExponent& g) {
        std::vector<std::uint64_t> out;
        for (const std::uint64_t p : table.primes_up_to(n))
            if (ps_indicator(static_cast<std::int64_t>(p), g) == 1)
                out.push_back(p);
        return out;
    };
    const auto s1 = members(g1);
    const auto s2 = c2 == c1 ? s1 : members(g2);
    std::vector<char> in3(n + 1, 0);
    for (const std::uint64_t p : (c3 == c1 ? s1 : c3 == c2 ? s2 : members(g3)))
        in3[p] = 1;

    Goldbach3Result r;
    r.n = n;
    r.c1 = c1;
    r.c2 = c2;
    r.c3 = c3;
    for (const std::uint64_t p1 : s1) {
        if (p1 + 4 > n)
            break;
        const std::uint64_t rest = n - p1;
        for (const std::uint64_t p2 : s2) {
            if (p2 + 2 > rest)
                break;
            r.exact += static_cast<std::uint64_t>(in3[rest - p2]);
        }
    }

    r.degenerate = n % 2 == 0;
    if (r.degenerate)
        return r;
    const double a = g1.gamma(), b = g2.gamma(), c = g3.gamma();
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    r.singular_series = singular_series(n, series_truncation).value;
    r.predicted = a * b * c * gamma_fn(a) * gamma_fn(b) * gamma_fn(c) / gamma_fn(a + b + c) * r.singular_series *
                  std::pow(nd, a + b + c - 1.0) / (log_n * log_n * log_n);
    return r;
}

} // namespace psp
