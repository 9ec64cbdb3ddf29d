#include "psp/expsums.hpp"

#include "psp/error.hpp"

#include <algorithm>
#include <string>

namespace psp {

void ExpSumSpec::validate() const
{
    if (!(u >= 0.0 && u <= 1.0))
        throw PreconditionError("ExpSumSpec: u must lie in [0, 1]");
    if (H < 1)
        throw PreconditionError("ExpSumSpec: H must be >= 1");
    if (x < 16)
        throw PreconditionError("ExpSumSpec: x must be >= 16");
    if (n_begin() < x || n_end() > 2 * x || n_begin() > n_end())
        throw PreconditionError("ExpSumSpec: n-subinterval must lie in (x, 2x]");
    if (h_begin() < H || h_end() > 2 * H || h_begin() > h_end())
        throw PreconditionError("ExpSumSpec: h-subinterval must lie in (H, 2H]");
}

std::uint64_t natural_h(std::uint64_t x, const GammaExponent& g)
{
    const double v = std::pow(static_cast<double>(x), 1.0 - g.gamma());
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v)));
}

namespace {

double frac(double t) { return t - std::floor(t); }

void check_budget(double terms, double max_terms, const char* what)
{
    if (terms > max_terms)
        throw ResourceLimitError(std::string(what) + ": " + std::to_string(terms) +
                                 " term evaluations exceed the budget " + std::to_string(max_terms));
}

} // namespace

double theorem_sum(const SieveTable& table, const ExpSumSpec& spec, bool scaled, Parallelism par,
                   double max_terms)
{
    spec.validate();
    if (2 * spec.x > table.limit())
        throw PreconditionError("theorem_sum: 2x exceeds the sieve limit");
    const std::uint64_t n0 = spec.n_begin(), n1 = spec.n_end();
    const std::uint64_t h0 = spec.h_begin(), h1 = spec.h_end();
    check_budget(static_cast<double>(n1 - n0) * static_cast<double>(h1 - h0), max_terms, "theorem_sum");

    // Only prime powers contribute; precompute their weights and phases.
    struct Term {
        double weight;
        double alpha_phase;
        double power;
    };
    std::vector<Term> terms;
    for (std::uint64_t n = n0 + 1; n <= n1; ++n) {
        const double lam = von_mangoldt(table, n);
        if (lam == 0.0)
            continue;
        const double nd = static_cast<double>(n);
        terms.push_back({lam, frac(spec.alpha * nd), std::pow(nd + spec.u, spec.g.gamma())});
    }

    const std::size_t h_count = static_cast<std::size_t>(h1 - h0);
    std::vector<double> inner(h_count, 0.0);
    parallel_for(h_count, par, [&](std::size_t i) {
        const double h = static_cast<double>(h0 + 1 + i);
        ComplexCompensatedSum acc;
        for (const Term& t : terms)
            acc += t.weight * unit_exp(t.alpha_phase + frac(h * t.power));
        inner[i] = std::abs(acc.value());
    });

    CompensatedSum total;
    for (const double v : inner)
        total += v;
    double value = total.value();
    if (scaled) {
        const double xd = static_cast<double>(spec.x);
        value *= std::min(1.0, std::pow(xd, 1.0 - spec.g.gamma()) / static_cast<double>(spec.H));
    }
    return value;
}

Complex bilinear_sum(const BilinearSpec& spec, double max_terms)
{
    if (spec.a.size() != spec.m_range.size() || spec.b.size() != spec.n_range.size())
        throw PreconditionError("bilinear_sum: coefficient arrays must match their ranges");
    if (spec.delta.size() != spec.H)
        throw PreconditionError("bilinear_sum: need one delta_h for each h in (H, 2H]");
    if (!(spec.u >= 0.0 && spec.u <= 1.0))
        throw PreconditionError("bilinear_sum: u must lie in [0, 1]");
    constexpr double slack = 1e-12;
    for (const Complex& v : spec.a)
        if (std::abs(v) > 1.0 + slack)
            throw PreconditionError("bilinear_sum: |a_m| must be <= 1");
    for (const Complex& v : spec.delta)
        if (std::abs(v) > 1.0 + slack)
            throw PreconditionError("bilinear_sum: |delta_h| must be <= 1");
    if (spec.kind == BilinearKind::type2) {
        for (const Complex& v : spec.b)
            if (std::abs(v) > 1.0 + slack)
                throw PreconditionError("bilinear_sum: Type II needs |b_n| <= 1");
    } else {
        bool all_one = true, all_log = true;
        for (std::size_t i = 0; i < spec.b.size(); ++i) {
            const double n = static_cast<double>(spec.n_range.lo + 1 + i);
            all_one = all_one && std::abs(spec.b[i] - Complex(1.0)) <= slack;
            all_log = all_log && std::abs(spec.b[i] - Complex(std::log(n))) <= slack;
        }
        if (!all_one && !all_log)
            throw PreconditionError("bilinear_sum: Type I needs b_n = 1 or b_n = log n throughout");
    }
    check_budget(static_cast<double>(spec.a.size()) * static_cast<double>(spec.b.size()) *
                     static_cast<double>(spec.H),
                 max_terms, "bilinear_sum");

    const double gam = spec.g.gamma();
    ComplexCompensatedSum acc;
    for (std::uint64_t hi = 0; hi < spec.H; ++hi) {
        const Complex dh = spec.delta[hi];
        if (dh == Complex(0.0))
            continue;
        const double h = static_cast<double>(spec.H + 1 + hi);
        for (std::size_t i = 0; i < spec.a.size(); ++i) {
            const std::uint64_t m = spec.m_range.lo + 1 + i;
            for (std::size_t j = 0; j < spec.b.size(); ++j) {
                const std::uint64_t n = spec.n_range.lo + 1 + j;
                const std::uint64_t mn = m * n;
                if (mn <= spec.x || mn > 2 * spec.x)
                    continue;
                const double mnd = static_cast<double>(mn);
                const double phase = frac(spec.alpha * mnd) + frac(h * std::pow(mnd + spec.u, gam));
                acc += dh * spec.a[i] * spec.b[j] * unit_exp(phase);
            }
        }
    }
    return acc.value();
}

VdcReport vdc_bound_check(double h, const GammaExponent& g, double alpha, std::uint64_t n)
{
    if (h == 0.0)
        throw PreconditionError("vdc_bound_check: h = 0 gives lambda = 0");
    if (n < 1)
        throw PreconditionError("vdc_bound_check: N must be >= 1");
    const double gam = g.gamma();
    const double nd = static_cast<double>(n);
    VdcReport r;
    r.lambda = gam * (1.0 - gam) * std::abs(h) * std::pow(nd, gam - 2.0);
    ComplexCompensatedSum acc;
    for (std::uint64_t k = n + 1; k <= 2 * n; ++k) {
        const double kd = static_cast<double>(k);
        acc += unit_exp(frac(h * std::pow(kd, gam)) + frac(alpha * kd));
    }
    r.lhs = std::abs(acc.value());
    r.rhs_unit = nd * std::sqrt(r.lambda) + 1.0 / std::sqrt(r.lambda);
    r.empirical_c = r.lhs / r.rhs_unit;
    return r;
}

double stationary_point(double h, double gamma, double nu, double a, double b)
{
    auto fp = [&](double t) { return gamma * h * std::pow(t, gamma - 1.0); };
    auto fpp = [&](double t) { return gamma * (gamma - 1.0) * h * std::pow(t, gamma - 2.0); };
    double lo = a, hi = b;
    for (int i = 0; i < 40 && hi - lo > 1e-6 * lo; ++i) {
        const double mid = 0.5 * (lo + hi);
        // f' is decreasing: f'(mid) > nu puts the root to the right.
        if (fp(mid) > nu)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 50; ++i) {
        const double step = (fp(t) - nu) / fpp(t);
        t = std::clamp(t - step, a, b);
        if (std::abs(step) <= 1e-14 * t)
            break;
    }
    return t;
}

BProcessReport b_process_compare(double h, const GammaExponent& g, std::uint64_t n, double a, double b)
{
    if (!(h > 0.0))
        throw PreconditionError("b_process_compare: h must be positive");
    const double nd = static_cast<double>(n);
    if (!(a > nd && a <= b && b <= 2.0 * nd))
        throw PreconditionError("b_process_compare: need N < a <= b <= 2N");
    const double gam = g.gamma();
    auto f = [&](double t) { return h * std::pow(t, gam); };
    auto fp = [&](double t) { return gam * h * std::pow(t, gam - 1.0); };
    auto fpp = [&](double t) { return gam * (gam - 1.0) * h * std::pow(t, gam - 2.0); };

    BProcessReport r;
    r.big_f = h * std::pow(nd, gam);
    r.bound = std::log(r.big_f / nd + 2.0) + nd / std::sqrt(r.big_f);
    r.degenerate = r.big_f < 1.0;

    ComplexCompensatedSum direct;
    for (auto k = static_cast<std::uint64_t>(std::ceil(a)); static_cast<double>(k) <= b; ++k)
        direct += unit_exp(frac(f(static_cast<double>(k))));
    r.direct = direct.value();

    ComplexCompensatedSum stationary;
    if (!r.degenerate) {
        const auto nu_lo = static_cast<std::int64_t>(std::ceil(fp(b)));
        const auto nu_hi = static_cast<std::int64_t>(std::floor(fp(a)));
        for (std::int64_t nu = nu_lo; nu <= nu_hi; ++nu) {
            const double nud = static_cast<double>(nu);
            const double t = stationary_point(h, gam, nud, a, b);
            const double phi = -f(t) + nud * t;
            stationary += unit_exp(frac(-phi) - 0.125) / std::sqrt(std::abs(fpp(t)));
            ++r.stationary_points;
        }
    }
    r.stationary = stationary.value();
    r.error = std::abs(r.direct - r.stationary);
    return r;
}

} // namespace psp
