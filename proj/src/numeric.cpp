#include "psp/numeric.hpp"

#include "psp/error.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <array>
#include <numbers>
#include <optional>
#include <string>

namespace psp {

GammaExponent GammaExponent::from_c(double c)
{
    if (!std::isfinite(c) || !(c > 1.0) || !(c < 2.0))
        throw PreconditionError("exponent c must satisfy 1 < c < 2, got " + std::to_string(c));
    return GammaExponent(c, 1.0 / c);
}

namespace {

constexpr double kInt64Limit = 9.2e18;

// Conservative bound on libm pow error, in ulps of the result.
constexpr double kPowUlps = 4.0;

template <class Real>
std::optional<std::int64_t> floor_if_separated(Real lo, Real hi)
{
    if (!(lo >= 0) || !(hi < static_cast<Real>(kInt64Limit)))
        return std::nullopt;
    const Real fl = std::floor(lo);
    if (std::floor(hi) != fl)
        return std::nullopt;
    return static_cast<std::int64_t>(fl);
}

std::int64_t checked_int64(const mpz_class& z)
{
    if (!z.fits_slong_p())
        throw PreconditionError("floor_pow: result does not fit in 64 bits");
    return z.get_si();
}

// e = numerator / 2^shift exactly, with numerator odd or shift == 0.
struct DyadicExponent {
    std::int64_t numerator;
    int shift;
};

DyadicExponent dyadic(double e)
{
    int ex = 0;
    const double f = std::frexp(e, &ex);
    auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
    int shift = 53 - ex;
    while (shift > 0 && (mant & 1) == 0) {
        mant >>= 1;
        --shift;
    }
    return {mant, shift};
}

// Returns n^e exactly when it is an integer, nullopt when it is irrational.
std::optional<mpz_class> exact_integer_power(std::int64_t n, double e)
{
    const DyadicExponent d = dyadic(e);
    const mpz_class base(static_cast<long>(n));
    if (d.shift <= 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(d.numerator) << -d.shift);
        return r;
    }
    // n^(a/b) with a odd, b = 2^shift is an integer iff n is a perfect b-th
    // power; b > log2(n) rules that out for n >= 2.
    if (d.shift >= 63)
        return std::nullopt;
    const unsigned long b = 1UL << d.shift;
    if (b > 63)
        return std::nullopt;
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), base.get_mpz_t(), b) == 0)
        return std::nullopt;
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), root.get_mpz_t(), static_cast<unsigned long>(d.numerator));
    return r;
}

std::optional<std::int64_t> floor_pow_mpfr(std::int64_t n, double e, mpfr_prec_t prec)
{
    mpfr_t base, expo, lo, hi;
    mpfr_inits2(prec, base, expo, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(base, n, MPFR_RNDN);
    mpfr_set_d(expo, e, MPFR_RNDN);
    mpfr_pow(lo, base, expo, MPFR_RNDD);
    mpfr_pow(hi, base, expo, MPFR_RNDU);
    mpz_class zlo, zhi;
    mpfr_get_z(zlo.get_mpz_t(), lo, MPFR_RNDD);
    mpfr_get_z(zhi.get_mpz_t(), hi, MPFR_RNDD);
    mpfr_clears(base, expo, lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (zlo != zhi)
        return std::nullopt;
    return checked_int64(zlo);
}

} // namespace

CertifiedReal certified_pow(std::int64_t n, double e)
{
    const double v = std::pow(static_cast<double>(n), e);
    const double ulp = std::nextafter(v, std::numeric_limits<double>::infinity()) - v;
    return {v, kPowUlps * ulp};
}

std::int64_t floor_pow(std::int64_t n, double e)
{
    if (n < 1)
        throw PreconditionError("floor_pow: n must be positive");
    if (!(e > 0.0) || !(e < 4.0))
        throw PreconditionError("floor_pow: exponent must lie in (0, 4)");
    if (n == 1)
        return 1;

    constexpr std::int64_t kExactDouble = std::int64_t{1} << 53;
    if (n < kExactDouble && e != std::floor(e)) {
        const CertifiedReal v = certified_pow(n, e);
        if (v.value >= kInt64Limit)
            throw PreconditionError("floor_pow: result does not fit in 64 bits");
        if (auto r = floor_if_separated(v.lower(), v.upper()))
            return *r;

        const long double lv = std::pow(static_cast<long double>(n), static_cast<long double>(e));
        const long double lulp =
            std::nextafter(lv, std::numeric_limits<long double>::infinity()) - lv;
        if (auto r = floor_if_separated(lv - 4 * lulp, lv + 4 * lulp))
            return *r;
    }

    if (auto exact = exact_integer_power(n, e))
        return checked_int64(*exact);

    // n^e is irrational here, so some precision separates it from the integers.
    for (mpfr_prec_t prec = 128; prec <= 16384; prec *= 2)
        if (auto r = floor_pow_mpfr(n, e, prec))
            return *r;
    throw PreconditionError("floor_pow: could not separate n^e from an integer");
}

std::int64_t ceil_root(std::int64_t m, double c)
{
    if (m < 1)
        throw PreconditionError("ceil_root: m must be positive");
    if (m == 1)
        return 1;
    auto n = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(m), 1.0 / c)));
    n = std::max<std::int64_t>(n, 1);
    while (n > 1 && floor_pow(n - 1, c) >= m)
        --n;
    while (floor_pow(n, c) < m)
        ++n;
    return n;
}

Complex unit_exp(double t) noexcept
{
    const double r = t - std::nearbyint(t);
    const double angle = 2 * std::numbers::pi * r;
    return {std::cos(angle), std::sin(angle)};
}

double gamma_fn(double s)
{
    if (!(s > 0.0) || !std::isfinite(s))
        throw PreconditionError("gamma_fn: argument must be positive");
    // Lanczos coefficients for g = 7, n = 9.
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    constexpr double g = 7.0;
    if (s < 0.5)
        return std::numbers::pi / (std::sin(std::numbers::pi * s) * gamma_fn(1.0 - s));
    const double z = s - 1.0;
    double x = p[0];
    for (std::size_t i = 1; i < p.size(); ++i)
        x += p[i] / (z + static_cast<double>(i));
    const double t = z + g + 0.5;
    return std::sqrt(2 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace psp
