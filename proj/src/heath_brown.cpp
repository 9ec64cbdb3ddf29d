#include "psp/heath_brown.hpp"

#include "psp/error.hpp"

#include <cmath>
#include <limits>

namespace psp {

namespace {

std::int64_t binomial(int n, int k)
{
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// tau_k(p^e) = C(e + k - 1, k - 1); tau_0 is the identity for convolution.
std::int64_t tau_prime_power(int k, int e)
{
    if (k == 0)
        return e == 0 ? 1 : 0;
    return binomial(e + k - 1, k - 1);
}

bool power_at_least(std::uint64_t z, int j, std::uint64_t target)
{
    unsigned __int128 v = 1;
    for (int i = 0; i < j; ++i) {
        v *= z;
        if (v >= target)
            return true;
    }
    return v >= target;
}

void all_divisors(const std::vector<PrimePower>& f, std::vector<std::uint64_t>& out)
{
    out.assign(1, 1);
    for (const PrimePower& pp : f) {
        const std::size_t base = out.size();
        std::uint64_t q = 1;
        for (int e = 1; e <= pp.exponent; ++e) {
            q *= pp.prime;
            for (std::size_t i = 0; i < base; ++i)
                out.push_back(out[i] * q);
        }
    }
}

int valuation(std::uint64_t m, std::uint64_t p)
{
    int e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return e;
}

} // namespace

void HbParams::validate() const
{
    if (J < 1 || J > 4)
        throw PreconditionError("HbParams: J must lie in [1, 4]");
    if (x < 2)
        throw PreconditionError("HbParams: x must be >= 2");
    if (Z < 1 || !power_at_least(Z, J, 2 * x))
        throw PreconditionError("HbParams: need Z^J >= 2x for the identity to hold on (x, 2x]");
}

std::uint64_t HbParams::minimal_cutoff(std::uint64_t x, int J)
{
    if (J < 1)
        throw PreconditionError("HbParams: J must be >= 1");
    auto z = static_cast<std::uint64_t>(std::pow(static_cast<double>(2 * x), 1.0 / J));
    z = z > 2 ? z - 2 : 1;
    while (!power_at_least(z, J, 2 * x))
        ++z;
    return z;
}

HbDecomposition::HbDecomposition(const SieveTable& table, HbParams params) : table_(&table), params_(params)
{
    params_.validate();
    const std::uint64_t top = 2 * params_.x;
    if (top > table.limit())
        throw PreconditionError("hb_terms: 2x exceeds the sieve limit");

    std::vector<std::int64_t> mu_z(top + 1, 0);
    for (std::uint64_t d = 1; d <= std::min(params_.Z, top); ++d)
        mu_z[d] = mobius(table, d);

    mu_powers_.resize(static_cast<std::size_t>(params_.J));
    mu_powers_[0] = mu_z;
    for (int j = 1; j < params_.J; ++j) {
        const auto& prev = mu_powers_[static_cast<std::size_t>(j - 1)];
        std::vector<std::int64_t> next(top + 1, 0);
        for (std::uint64_t d = 1; d <= std::min(params_.Z, top); ++d) {
            if (mu_z[d] == 0)
                continue;
            for (std::uint64_t m = 1; d * m <= top; ++m)
                next[d * m] += mu_z[d] * prev[m];
        }
        mu_powers_[static_cast<std::size_t>(j)] = std::move(next);
    }
}

std::vector<LogCoefficient> HbDecomposition::coefficients(std::uint64_t n) const
{
    if (n <= params_.x || n > 2 * params_.x)
        throw PreconditionError("hb_reconstruct: n must lie in (x, 2x]");
    const auto f = table_->factorize(n);
    std::vector<std::uint64_t> divisors;
    all_divisors(f, divisors);

    std::vector<LogCoefficient> out;
    for (const PrimePower& pp : f) {
        std::int64_t total = 0;
        for (int j = 1; j <= params_.J; ++j) {
            const auto& g = mu_powers_[static_cast<std::size_t>(j - 1)];
            // Coefficient of log p in (log * tau_{j-1})(m), m = p^e m':
            //   (sum_a a tau_{j-1}(p^{e-a})) tau_j(m').
            std::int64_t inner = 0;
            for (const std::uint64_t d : divisors) {
                if (g[d] == 0)
                    continue;
                const std::uint64_t m = n / d;
                const int e = valuation(m, pp.prime);
                if (e == 0)
                    continue;
                std::int64_t local = 0;
                for (int a = 1; a <= e; ++a)
                    local += a * tau_prime_power(j - 1, e - a);
                std::int64_t rest = 1;
                for (const PrimePower& other : f) {
                    if (other.prime == pp.prime)
                        continue;
                    rest *= tau_prime_power(j, valuation(m, other.prime));
                }
                inner += g[d] * local * rest;
            }
            const std::int64_t sign = (j % 2 == 1) ? 1 : -1;
            total += sign * binomial(params_.J, j) * inner;
        }
        if (total != 0)
            out.push_back({pp.prime, total});
    }
    return out;
}

double HbDecomposition::reconstruct(std::uint64_t n) const
{
    double v = 0.0;
    for (const LogCoefficient& c : coefficients(n))
        v += static_cast<double>(c.coefficient) * std::log(static_cast<double>(c.prime));
    return v;
}

HbDecomposition hb_terms(const SieveTable& table, const HbParams& params) { return HbDecomposition(table, params); }

double hb_reconstruct(const HbDecomposition& handle, std::uint64_t n) { return handle.reconstruct(n); }

HbVerification hb_verify(const SieveTable& table, const HbParams& params)
{
    const HbDecomposition hb(table, params);
    HbVerification out;
    for (std::uint64_t n = params.x + 1; n <= 2 * params.x; ++n) {
        const auto got = hb.coefficients(n);
        const auto f = table.factorize(n);
        const bool prime_power = f.size() == 1;
        const bool ok = prime_power ? (got.size() == 1 && got[0].prime == f[0].prime && got[0].coefficient == 1)
                                    : got.empty();
        ++out.checked;
        if (!ok) {
            if (out.mismatches == 0)
                out.first_mismatch = n;
            ++out.mismatches;
        }
    }
    return out;
}

std::string to_string(BlockType t)
{
    switch (t) {
    case BlockType::type1:
        return "TypeI";
    case BlockType::type2:
        return "TypeII";
    case BlockType::neither:
        break;
    }
    return "Neither";
}

BlockType classify_block(std::uint64_t n_block, std::uint64_t U, std::uint64_t V, std::uint64_t Z)
{
    if (!(3 <= U && U < V && V < Z))
        throw PreconditionError("classify_block: need 3 <= U < V < Z");
    if (n_block > Z)
        return BlockType::type1;
    if (U < n_block && n_block < V)
        return BlockType::type2;
    return BlockType::neither;
}

std::vector<std::string> hb_hypothesis_violations(double x, double U, double V, double Z)
{
    std::vector<std::string> out;
    if (!(x >= 64.0 * Z * Z * U))
        out.emplace_back("x >= 64 Z^2 U");
    if (!(Z >= 4.0 * U * U))
        out.emplace_back("Z >= 4 U^2");
    if (!(V * V * V >= 32.0 * x))
        out.emplace_back("V^3 >= 32 x");
    return out;
}

} // namespace psp
