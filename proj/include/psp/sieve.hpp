#pragma once

#include "psp/numeric.hpp"
#include "psp/parallel.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace psp {

struct PrimePower {
    std::uint64_t prime;
    int exponent;
};

/// Least-prime-factor table over [2, limit], with primality bits and the
/// ordered prime list. Immutable after construction; all queries are const.
class SieveTable {
public:
    static constexpr std::uint64_t kMaxLimit = std::uint64_t{1} << 34;
    static constexpr std::uint64_t kSegment = std::uint64_t{1} << 20;

    /// Throws PreconditionError unless 2 <= limit <= 2^34.
    explicit SieveTable(std::uint64_t limit, Parallelism par = {});

    std::uint64_t limit() const noexcept { return limit_; }
    bool is_prime(std::uint64_t n) const;
    std::uint64_t least_prime_factor(std::uint64_t n) const;

    /// All primes <= limit, ascending.
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    /// Primes <= x (x <= limit), ascending.
    std::span<const std::uint64_t> primes_up_to(std::uint64_t x) const;
    std::uint64_t prime_count(std::uint64_t x) const { return primes_up_to(x).size(); }

    std::vector<PrimePower> factorize(std::uint64_t n) const;

private:
    void check_range(std::uint64_t n, std::uint64_t lo, const char* what) const;

    std::uint64_t limit_;
    std::vector<std::uint32_t> base_primes_;
    // 0 for 0, 1 and primes; otherwise 1 + index of the least prime factor
    // in base_primes_.
    std::vector<std::uint16_t> lpf_code_;
    std::vector<bool> primality_;
    std::vector<std::uint64_t> primes_;
};

/// Lambda(n): log p if n = p^k, else 0. Requires 2 <= n <= limit.
double von_mangoldt(const SieveTable& table, std::uint64_t n);

/// Moebius function. Requires 1 <= n <= limit.
int mobius(const SieveTable& table, std::uint64_t n);

/// Sum of weight(p) over primes p <= x with p = a (mod q), in ascending p
/// with compensated accumulation. gcd(a, q) > 1 is allowed.
Complex prime_sum_ap(const SieveTable& table, std::uint64_t x, std::uint64_t q, std::uint64_t a,
                     const std::function<Complex(std::uint64_t)>& weight);

} // namespace psp
