#pragma once

// Direct evaluation of the exponential sums
//   sum_{h ~ H} | sum_{n ~ x} Lambda(n) e(alpha n + h (n + u)^gamma) |
// and of the one-variable sums used to check the van der Corput tests.

#include "psp/numeric.hpp"
#include "psp/parallel.hpp"
#include "psp/sieve.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace psp {

/// Term-evaluation budget for theorem_sum and bilinear_sum.
inline constexpr double kDefaultMaxTerms = 1e13;

/// Parameters of the central sum. n runs over (x, 2x] and h over (H, 2H]
/// unless the optional subinterval endpoints narrow them; endpoints are
/// half-open (lo, hi].
struct ExpSumSpec {
    double alpha = 0;
    GammaExponent g = GammaExponent::from_c(1.5);
    double u = 0;
    std::uint64_t x = 16;
    std::uint64_t H = 1;
    std::optional<std::uint64_t> n_lo, n_hi;
    std::optional<std::uint64_t> h_lo, h_hi;

    std::uint64_t n_begin() const { return n_lo.value_or(x); }
    std::uint64_t n_end() const { return n_hi.value_or(2 * x); }
    std::uint64_t h_begin() const { return h_lo.value_or(H); }
    std::uint64_t h_end() const { return h_hi.value_or(2 * H); }

    /// Throws PreconditionError unless 0 <= u <= 1, H >= 1, x >= 16 and the
    /// subintervals lie inside their dyadic ranges.
    void validate() const;
};

/// ceil(x^{1 - gamma}), the natural H for a given x.
std::uint64_t natural_h(std::uint64_t x, const GammaExponent& g);

/// The central sum by direct evaluation; if scaled, multiplied by
/// min{1, x^{1-gamma}/H}. Requires 2x <= table.limit() and at most
/// max_terms term evaluations (ResourceLimitError otherwise).
double theorem_sum(const SieveTable& table, const ExpSumSpec& spec, bool scaled, Parallelism par = {},
                   double max_terms = kDefaultMaxTerms);

enum class BilinearKind { type1, type2 };

/// Half-open integer range (lo, hi].
struct IndexRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::size_t size() const { return hi > lo ? static_cast<std::size_t>(hi - lo) : 0; }
};

/// sum_h delta_h sum_m sum_n a_m b_n e(alpha mn + h (mn + u)^gamma) over
/// m in M, n in N, h in (H, 2H], restricted to mn in (x, 2x].
/// a[i] is the coefficient of m = M.lo + 1 + i, likewise b and delta.
struct BilinearSpec {
    BilinearKind kind = BilinearKind::type1;
    std::vector<Complex> a;
    std::vector<Complex> b;
    std::vector<Complex> delta;
    IndexRange m_range;
    IndexRange n_range;
    double alpha = 0;
    GammaExponent g = GammaExponent::from_c(1.5);
    double u = 0;
    std::uint64_t x = 16;
    std::uint64_t H = 1;
};

/// Direct evaluation. Rejects |a_m| > 1, |delta_h| > 1, and b violating the
/// kind's rule: Type I needs b_n = 1 for all n or b_n = log n for all n,
/// Type II needs |b_n| <= 1.
Complex bilinear_sum(const BilinearSpec& spec, double max_terms = kDefaultMaxTerms);

struct VdcReport {
    double lhs = 0;
    double rhs_unit = 0;
    double empirical_c = 0;
    double lambda = 0;
};

/// |sum_{N < n <= 2N} e(h n^gamma + alpha n)| against N lambda^{1/2} + lambda^{-1/2},
/// lambda = gamma (1 - gamma) |h| N^{gamma - 2}. h = 0 is rejected.
VdcReport vdc_bound_check(double h, const GammaExponent& g, double alpha, std::uint64_t n);

struct BProcessReport {
    Complex direct;
    Complex stationary;
    double error = 0;
    double bound = 0;
    double big_f = 0;
    std::size_t stationary_points = 0;
    /// F < 1: no stationary points can be resolved.
    bool degenerate = false;
};

/// Compares sum_{a <= n <= b} e(h n^gamma) with its stationary-phase
/// expansion sum_nu e(-phi(nu) - 1/8) / |f''(x_nu)|^{1/2} over integers
/// f'(b) <= nu <= f'(a). bound = log(F/N + 2) + N / sqrt(F), F = h N^gamma.
/// Requires h > 0 and N < a <= b <= 2N.
BProcessReport b_process_compare(double h, const GammaExponent& g, std::uint64_t n, double a, double b);

/// Root of the decreasing f'(t) = gamma h t^{gamma-1} = nu on [a, b]:
/// bisection to a bracket, then Newton to 1e-12 relative.
double stationary_point(double h, double gamma, double nu, double a, double b);

} // namespace psp
