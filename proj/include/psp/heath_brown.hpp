#pragma once

#include "psp/sieve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace psp {

/// Parameters of the Heath-Brown identity on (x, 2x]. Requires 1 <= J <= 4
/// and Z^J >= 2x, which makes the identity exact on the whole range.
struct HbParams {
    int J = 3;
    std::uint64_t x = 0;
    std::uint64_t Z = 0;

    void validate() const;
    /// Least Z with Z^J >= 2x.
    static std::uint64_t minimal_cutoff(std::uint64_t x, int J);
};

/// Coefficient of log p in a value that is an integer combination of logs of primes.
struct LogCoefficient {
    std::uint64_t prime;
    std::int64_t coefficient;
};

/// Precomputed pieces of
///   Lambda = sum_{j=1}^{J} (-1)^{j-1} C(J,j) mu_Z^{*j} * log * 1^{*(j-1)},
/// mu_Z being the Moebius function cut off at Z. Keeps a reference to the
/// sieve table, which must outlive it.
class HbDecomposition {
public:
    HbDecomposition(const SieveTable& table, HbParams params);

    const HbParams& params() const noexcept { return params_; }

    /// The identity's right-hand side at n, as exact integer coefficients of
    /// log p for each prime p | n (zero coefficients omitted).
    std::vector<LogCoefficient> coefficients(std::uint64_t n) const;
    /// The same value as a real number.
    double reconstruct(std::uint64_t n) const;

private:
    const SieveTable* table_;
    HbParams params_;
    // mu_Z^{*j}(d) for j = 1..J and d <= 2x.
    std::vector<std::vector<std::int64_t>> mu_powers_;
};

HbDecomposition hb_terms(const SieveTable& table, const HbParams& params);
double hb_reconstruct(const HbDecomposition& handle, std::uint64_t n);

struct HbVerification {
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t first_mismatch = 0;
};

/// Compares the identity with Lambda on (x, 2x] coefficient by coefficient.
HbVerification hb_verify(const SieveTable& table, const HbParams& params);

enum class BlockType { type1, type2, neither };

std::string to_string(BlockType t);

/// Type I when N > Z, Type II when U < N < V, otherwise neither.
/// Requires 3 <= U < V < Z.
BlockType classify_block(std::uint64_t n_block, std::uint64_t U, std::uint64_t V, std::uint64_t Z);

/// Which of x >= 64 Z^2 U, Z >= 4 U^2, V^3 >= 32 x fail (empty if none).
std::vector<std::string> hb_hypothesis_violations(double x, double U, double V, double Z);

} // namespace psp
