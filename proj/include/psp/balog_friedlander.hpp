#pragma once

#include "psp/numeric.hpp"
#include "psp/parallel.hpp"
#include "psp/sieve.hpp"

#include <cstdint>
#include <vector>

namespace psp {

/// Weights log p (c p^{1-gamma} 1_PS(p) - 1) for the primes p <= N, with
/// certified PS membership.
class BfWeights {
public:
    BfWeights(const SieveTable& table, std::uint64_t n, const GammaExponent& g);

    std::uint64_t n() const noexcept { return n_; }
    const GammaExponent& exponent() const noexcept { return g_; }
    /// |sum_{p <= N} w_p e(alpha p)|.
    double discrepancy(double alpha) const;

private:
    std::uint64_t n_;
    GammaExponent g_;
    std::vector<std::uint64_t> primes_;
    std::vector<double> weights_;
};

/// |sum_{p <= N, p PS} c p^{1-gamma} log p e(alpha p) - sum_{p <= N} log p e(alpha p)|.
/// Requires N <= table.limit().
double bf_discrepancy(const SieveTable& table, std::uint64_t n, const GammaExponent& g, double alpha);

struct AlphaScanRow {
    double alpha = 0;
    double discrepancy = 0;
};

struct AlphaScanResult {
    double max_discrepancy = 0;
    double argmax_alpha = 0;
    /// Ascending in alpha; grid points and rationals a/q (q <= 20) merged,
    /// duplicates removed.
    std::vector<AlphaScanRow> rows;
};

/// bf_discrepancy over alpha = j / grid_size (0 <= j < grid_size) and every
/// reduced a/q in [0, 1) with q <= 20. Requires 1 <= grid_size <= 10^4.
AlphaScanResult alpha_scan(const SieveTable& table, std::uint64_t n, const GammaExponent& g,
                           std::uint64_t grid_size, Parallelism par = {});

} // namespace psp
