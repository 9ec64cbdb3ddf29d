#include "psp/balog_friedlander.hpp"

#include "psp/error.hpp"
#include "psp/ps_sequence.hpp"

#include <algorithm>
#include <numeric>

namespace psp {

BfWeights::BfWeights(const SieveTable& table, std::uint64_t n, const GammaExponent& g) : n_(n), g_(g)
{
    if (n < 2 || n > table.limit())
        throw PreconditionError("bf_discrepancy: need 2 <= N <= sieve limit");
    const auto ps = table.primes_up_to(n);
    primes_.assign(ps.begin(), ps.end());
    weights_.reserve(primes_.size());
    const double c = g.c();
    const double expo = 1.0 - g.gamma();
    for (const std::uint64_t p : primes_) {
        const double pd = static_cast<double>(p);
        const double in_ps = ps_indicator(static_cast<std::int64_t>(p), g) ? c * std::pow(pd, expo) : 0.0;
        weights_.push_back(std::log(pd) * (in_ps - 1.0));
    }
}

double BfWeights::discrepancy(double alpha) const
{
    const double a = alpha - std::floor(alpha);
    ComplexCompensatedSum acc;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const double pd = static_cast<double>(primes_[i]);
        // a p mod 1 without forming the large product a p directly.
        const double t = std::fma(a, pd, -std::floor(a * pd));
        acc += weights_[i] * unit_exp(t);
    }
    return std::abs(acc.value());
}

double bf_discrepancy(const SieveTable& table, std::uint64_t n, const GammaExponent& g, double alpha)
{
    return BfWeights(table, n, g).discrepancy(alpha);
}

AlphaScanResult alpha_scan(const SieveTable& table, std::uint64_t n, const GammaExponent& g,
                           std::uint64_t grid_size, Parallelism par)
{
    if (grid_size < 1 || grid_size > 10'000)
        throw PreconditionError("alpha_scan: grid_size must lie in [1, 10^4]");

    // Points as exact fractions (num, den), deduplicated by cross-multiplication.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
    for (std::uint64_t j = 0; j < grid_size; ++j) {
        const std::uint64_t d = std::gcd(j, grid_size);
        points.emplace_back(j / d, grid_size / d);
    }
    for (std::uint64_t q = 1; q <= 20; ++q)
        for (std::uint64_t a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1)
                points.emplace_back(a, q);
    auto less = [](const auto& x, const auto& y) { return x.first * y.second < y.first * x.second; };
    auto equal = [](const auto& x, const auto& y) { return x.first * y.second == y.first * x.second; };
    std::sort(points.begin(), points.end(), less);
    points.erase(std::unique(points.begin(), points.end(), equal), points.end());

    const BfWeights weights(table, n, g);
    AlphaScanResult out;
    out.rows.resize(points.size());
    parallel_for(points.size(), par, [&](std::size_t i) {
        const double alpha = static_cast<double>(points[i].first) / static_cast<double>(points[i].second);
        out.rows[i] = {alpha, weights.discrepancy(alpha)};
    });
    out.max_discrepancy = out.rows[0].discrepancy;
    out.argmax_alpha = out.rows[0].alpha;
    for (const AlphaScanRow& r : out.rows) {
        if (r.discrepancy > out.max_discrepancy) {
            out.max_discrepancy = r.discrepancy;
            out.argmax_alpha = r.alpha;
        }
    }
    return out;
}

} // namespace psp
