#pragma once

#include "psp/numeric.hpp"
#include "psp/sieve.hpp"

#include <cstdint>

namespace psp {

/// 1 iff m = floor(n^c) for some n >= 1, computed as
/// ceil((m+1)^{1/c}) - ceil(m^{1/c}) with certified ceilings.
int ps_indicator(std::int64_t m, const GammaExponent& g);

/// Indicator minus its leading expansion
/// gamma m^{gamma-1} + psi(-(m+1)^gamma) - psi(-m^gamma). Requires m >= 2.
double ps_expansion_residual(std::int64_t m, const GammaExponent& g);

struct PsCountReport {
    std::uint64_t x = 0;
    double c = 0;
    std::uint64_t q = 1;
    std::uint64_t a = 0;
    std::uint64_t count = 0;
    double main_term = 0;
    /// count / main_term, or 0 when main_term is 0.
    double ratio = 0;
    /// x^gamma / log x, reported alongside the refined main term.
    double headline_term = 0;
};

/// Counts primes p <= x in the PS sequence. main_term is the refined
/// gamma * sum_{p <= x} p^{gamma-1}.
PsCountReport ps_prime_count(const SieveTable& table, std::uint64_t x, const GammaExponent& g);

/// PS primes p <= x with p = a (mod q). Requires gcd(a, q) = 1, q <= 10^4.
PsCountReport ps_prime_count_ap(const SieveTable& table, std::uint64_t x, const GammaExponent& g,
                                std::uint64_t q, std::uint64_t a);

/// gamma x^{gamma-1} pi(x;q,a) - gamma(gamma-1) int_2^x u^{gamma-2} pi(u;q,a) du,
/// with the step-function integral in closed form.
double ap_main_term(const SieveTable& table, std::uint64_t x, const GammaExponent& g, std::uint64_t q,
                    std::uint64_t a);

/// How alpha is known. Quadratic irrationals are re-evaluated to high
/// precision whenever a membership test lands close to a boundary.
enum class AlphaKind { decimal, sqrt2, golden_ratio };

struct BeattyParams {
    double alpha = 0;
    double beta = 0;
    AlphaKind kind = AlphaKind::decimal;

    /// Validates alpha > 1 and that alpha is not within 1e-12 of a rational
    /// with denominator <= 10^4. Throws PreconditionError otherwise.
    static BeattyParams make(double alpha, double beta, AlphaKind kind = AlphaKind::decimal);
    static BeattyParams sqrt2(double beta) { return make(std::sqrt(2.0), beta, AlphaKind::sqrt2); }
    static BeattyParams golden_ratio(double beta)
    {
        return make((1.0 + std::sqrt(5.0)) / 2.0, beta, AlphaKind::golden_ratio);
    }
};

/// True iff m = floor(alpha n + beta) for some integer n >= 1.
bool beatty_member(std::int64_t m, const BeattyParams& b);

/// PS primes p <= x lying in the Beatty sequence; main_term = x^gamma / (alpha log x).
PsCountReport ps_beatty_prime_count(const SieveTable& table, std::uint64_t x, const GammaExponent& g,
                                    const BeattyParams& b);

struct SingularSeriesResult {
    std::uint64_t n = 0;
    std::uint64_t truncation = 0;
    double value = 0;
    /// Bound on |log| of the omitted factors p > truncation: 2 / P.
    double tail_bound = 0;
};

/// Euler product over p <= P. Requires N >= 3, P >= 100. Even N gives 0 exactly.
SingularSeriesResult singular_series(std::uint64_t n, std::uint64_t truncation);

struct Goldbach3Result {
    std::uint64_t n = 0;
    double c1 = 0, c2 = 0, c3 = 0;
    /// Ordered triples (p1, p2, p3) of PS primes with p1 + p2 + p3 = N.
    std::uint64_t exact = 0;
    double predicted = 0;
    double singular_series = 0;
    /// Set for even N: the prediction vanishes identically.
    bool degenerate = false;
};

/// Requires 10^4 <= N <= 10^6, N <= table.limit(), 1 < c_i < 6/5.
Goldbach3Result goldbach3_count(const SieveTable& table, std::uint64_t n, double c1, double c2, double c3,
                                std::uint64_t series_truncation = 1'000'000);

} // namespace psp
