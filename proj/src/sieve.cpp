#include "psp/sieve.hpp"

#include "psp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace psp {

namespace {

std::vector<std::uint32_t> small_primes(std::uint64_t bound)
{
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

} // namespace

SieveTable::SieveTable(std::uint64_t limit, Parallelism par) : limit_(limit)
{
    if (limit < 2 || limit > kMaxLimit)
        throw PreconditionError("sieve limit must lie in [2, 2^34], got " + std::to_string(limit));

    base_primes_ = small_primes(isqrt(limit));
    lpf_code_.assign(limit + 1, 0);

    // Segments are independent: each writes only its own slice, marking
    // with base primes in ascending order so the first mark is the least
    // prime factor.
    const std::size_t segments = (limit + kSegment) / kSegment;
    parallel_for(segments, par, [&](std::size_t s) {
        const std::uint64_t lo = s * kSegment;
        const std::uint64_t hi = std::min(limit, lo + kSegment - 1);
        for (std::size_t i = 0; i < base_primes_.size(); ++i) {
            const std::uint64_t p = base_primes_[i];
            if (p * p > hi)
                break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            const auto code = static_cast<std::uint16_t>(i + 1);
            for (std::uint64_t m = start; m <= hi; m += p)
                if (lpf_code_[m] == 0)
                    lpf_code_[m] = code;
        }
    });

    primality_.assign(limit + 1, false);
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (lpf_code_[n] == 0) {
            primality_[n] = true;
            primes_.push_back(n);
        }
    }
}

void SieveTable::check_range(std::uint64_t n, std::uint64_t lo, const char* what) const
{
    if (n < lo || n > limit_)
        throw PreconditionError(std::string(what) + ": argument " + std::to_string(n) +
                                " outside sieve range [" + std::to_string(lo) + ", " +
                                std::to_string(limit_) + "]");
}

bool SieveTable::is_prime(std::uint64_t n) const
{
    check_range(n, 0, "is_prime");
    return primality_[n];
}

std::uint64_t SieveTable::least_prime_factor(std::uint64_t n) const
{
    check_range(n, 2, "least_prime_factor");
    const std::uint16_t code = lpf_code_[n];
    return code == 0 ? n : base_primes_[code - 1];
}

std::span<const std::uint64_t> SieveTable::primes_up_to(std::uint64_t x) const
{
    check_range(x, 0, "primes_up_to");
    const auto end = std::upper_bound(primes_.begin(), primes_.end(), x);
    return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

std::vector<PrimePower> SieveTable::factorize(std::uint64_t n) const
{
    check_range(n, 1, "factorize");
    std::vector<PrimePower> out;
    while (n > 1) {
        const std::uint64_t p = least_prime_factor(n);
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

double von_mangoldt(const SieveTable& table, std::uint64_t n)
{
    if (n < 2 || n > table.limit())
        throw PreconditionError("von_mangoldt: n outside [2, limit]");
    const std::uint64_t p = table.least_prime_factor(n);
    std::uint64_t m = n;
    while (m % p == 0)
        m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

int mobius(const SieveTable& table, std::uint64_t n)
{
    if (n < 1 || n > table.limit())
        throw PreconditionError("mobius: n outside [1, limit]");
    int sign = 1;
    for (const auto& pp : table.factorize(n)) {
        if (pp.exponent > 1)
            return 0;
        sign = -sign;
    }
    return sign;
}

Complex prime_sum_ap(const SieveTable& table, std::uint64_t x, std::uint64_t q, std::uint64_t a,
                     const std::function<Complex(std::uint64_t)>& weight)
{
    if (x > table.limit())
        throw PreconditionError("prime_sum_ap: x exceeds sieve limit");
    if (q < 1 || a >= q)
        throw PreconditionError("prime_sum_ap: need q >= 1 and 0 <= a < q");
    ComplexCompensatedSum acc;
    for (const std::uint64_t p : table.primes_up_to(x))
        if (p % q == a)
            acc += weight(p);
    return acc.value();
}

} // namespace psp
