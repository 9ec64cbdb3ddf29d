#include "psp/exppairs.hpp"

#include "psp/error.hpp"

#include <algorithm>
#include <deque>

namespace psp {

namespace {

const Rational kHalf(1, 2);
const Rational kOne(1);

} // namespace

bool in_validity_domain(const Rational& k, const Rational& l)
{
    return Rational(0) <= k && k <= kHalf && kHalf <= l && l <= kOne;
}

ExponentPair ExponentPair::make(Rational k, Rational l, std::string seed)
{
    if (!in_validity_domain(k, l))
        throw PreconditionError("exponent pair (" + k.str() + ", " + l.str() +
                                ") outside 0 <= k <= 1/2 <= l <= 1");
    return {std::move(k), std::move(l), "", std::move(seed)};
}

ExponentPair trivial_pair() { return ExponentPair::make(0, 1, "trivial"); }

ExponentPair bourgain_pair() { return ExponentPair::make(Rational(13, 84), Rational(55, 84), "bourgain"); }

ExponentPair a_process(const ExponentPair& p)
{
    const Rational d = Rational(2) * p.k + Rational(2);
    ExponentPair out{p.k / d, (p.k + p.l + kOne) / d, "A" + p.word, p.seed};
    if (!in_validity_domain(out.k, out.l))
        throw PreconditionError("A-process left the validity domain from " + p.label());
    return out;
}

ExponentPair b_process(const ExponentPair& p)
{
    ExponentPair out{p.l - kHalf, p.k + kHalf, "B" + p.word, p.seed};
    if (!in_validity_domain(out.k, out.l))
        throw PreconditionError("B-process image (" + out.k.str() + ", " + out.l.str() +
                                ") of " + p.label() + " is not a valid pair");
    return out;
}

Rational pair_margin(const ExponentPair& p) { return Rational(4) * p.k - Rational(2) * p.l + kOne; }

Rational gamma_threshold(const ExponentPair& p)
{
    if (pair_margin(p).sign() <= 0)
        throw InfeasibleError("4k - 2l + 1 <= 0 for " + p.label());
    const Rational twelve_k = Rational(12) * p.k;
    const Rational ratio = (twelve_k + Rational(10)) / (twelve_k - Rational(2) * p.l + Rational(13));
    return max(Rational(13, 15), ratio);
}

std::string to_string(const ExponentBound& b)
{
    switch (b.shift) {
    case EpsShift::plus:
        return b.value.str() + "+eps";
    case EpsShift::minus:
        return b.value.str() + "-eps";
    case EpsShift::none:
        break;
    }
    return b.value.str();
}

ConstraintReport type1_constraints(const ExponentPair& p, const Rational& gamma)
{
    ConstraintReport r;
    const Rational margin = pair_margin(p);
    if (margin.sign() == 0)
        throw PreconditionError("type1_constraints: 4k - 2l + 1 = 0 for " + p.label());
    if (margin.sign() < 0) {
        r.binding = "pair_margin";
        return r;
    }

    r.gamma_lower = (Rational(5) * p.k - p.l + Rational(3)) /
                    (Rational(6) * p.k - Rational(2) * p.l + Rational(4));
    const Rational t = kOne - gamma;
    const Rational direct = t + kHalf;
    const Rational pair_bound = ((Rational(4) * p.k + Rational(6)) * t + Rational(2) * p.k - kOne) / margin;
    const Rational differencing = Rational(2) * t;
    r.n_lower_exponents = {direct, pair_bound, differencing};

    const bool pair_route_binds = differencing <= pair_bound;
    const Rational& second = pair_route_binds ? pair_bound : differencing;
    if (direct <= second) {
        r.n_lower = ExponentBound{direct, EpsShift::plus};
        r.binding = "second_derivative";
    } else {
        r.n_lower = ExponentBound{second, EpsShift::plus};
        r.binding = pair_route_binds ? "exponent_pair" : "a_process";
    }

    if (!(*r.gamma_lower < gamma && gamma < kOne)) {
        r.feasible = false;
        r.binding = "gamma_bound";
        return r;
    }
    r.feasible = true;
    return r;
}

ConstraintReport type2_range(const Rational& gamma, const Rational& delta)
{
    if (delta.sign() < 0 || delta > kOne - gamma)
        throw PreconditionError("type2_range: need 0 <= delta <= 1 - gamma");
    ConstraintReport r;
    r.gamma_lower = (Rational(5) + Rational(8) * delta) / Rational(6);
    const Rational lower = kOne - gamma + Rational(2) * delta;
    const Rational upper = Rational(5) * gamma - Rational(4) - Rational(6) * delta;
    r.n_lower_exponents = {lower};
    r.n_lower = ExponentBound{lower, EpsShift::plus};
    r.n_upper = ExponentBound{upper, EpsShift::minus};
    // lower < upper is the same inequality as 6(1 - gamma) + 8 delta < 1.
    r.feasible = lower < upper && gamma < kOne;
    r.binding = r.feasible ? "window" : "empty_window";
    return r;
}

namespace {

struct DeltaTerms {
    Rational first;  // (3-2l) - (12k-2l+13)(1-g) - (20k-4l+16) d, scaled by (3-2l)
    Rational second; // 1 - (15/2)(1-g) - 9 d
};

DeltaTerms delta_slack(const ExponentPair& p, const Rational& gamma, const Rational& delta)
{
    const Rational denom = Rational(3) - Rational(2) * p.l;
    if (denom.sign() <= 0)
        throw PreconditionError("3 - 2l <= 0 cannot occur on the validity domain");
    const Rational t = kOne - gamma;
    const Rational a = (Rational(12) * p.k - Rational(2) * p.l + Rational(13)) / denom;
    const Rational b = (Rational(20) * p.k - Rational(4) * p.l + Rational(16)) / denom;
    return {kOne - a * t - b * delta, kOne - Rational(15, 2) * t - Rational(9) * delta};
}

} // namespace

bool delta_feasible(const ExponentPair& p, const Rational& gamma, const Rational& delta)
{
    if (pair_margin(p).sign() <= 0)
        return false;
    if (delta.sign() < 0 || delta > kOne - gamma)
        return false;
    const DeltaTerms s = delta_slack(p, gamma, delta);
    return s.first.sign() > 0 && s.second.sign() > 0;
}

MaxDeltaReport max_delta_report(const ExponentPair& p, const Rational& gamma)
{
    if (!delta_feasible(p, gamma, Rational(0)))
        throw InfeasibleError("max_delta: delta = 0 is already infeasible for " + p.label() +
                              " at gamma = " + gamma.str());
    const Rational t = kOne - gamma;
    const Rational first = ((Rational(3) - Rational(2) * p.l) -
                            (Rational(12) * p.k - Rational(2) * p.l + Rational(13)) * t) /
                           (Rational(20) * p.k - Rational(4) * p.l + Rational(16));
    const Rational second = (kOne - Rational(15, 2) * t) / Rational(9);

    MaxDeltaReport r{first, false, "pair_inequality"};
    if (second < r.value)
        r = {second, false, "fifteen_halves_inequality"};
    if (t < r.value)
        r = {t, true, "delta_le_one_minus_gamma"};
    return r;
}

Rational max_delta(const ExponentPair& p, const Rational& gamma) { return max_delta_report(p, gamma).value; }

std::optional<SearchObjective> parse_objective(std::string_view name)
{
    if (name == "gamma_threshold")
        return SearchObjective::gamma_threshold;
    if (name == "type1_gamma_bound")
        return SearchObjective::type1_gamma_bound;
    if (name == "max_delta")
        return SearchObjective::max_delta;
    return std::nullopt;
}

std::string to_string(SearchObjective o)
{
    switch (o) {
    case SearchObjective::gamma_threshold:
        return "gamma_threshold";
    case SearchObjective::type1_gamma_bound:
        return "type1_gamma_bound";
    case SearchObjective::max_delta:
        return "max_delta";
    }
    return "unknown";
}

namespace {

std::optional<Rational> evaluate(const ExponentPair& p, SearchObjective objective,
                                 const std::optional<Rational>& gamma)
{
    if (pair_margin(p).sign() <= 0)
        return std::nullopt;
    switch (objective) {
    case SearchObjective::gamma_threshold:
        return gamma_threshold(p);
    case SearchObjective::type1_gamma_bound:
        return (Rational(5) * p.k - p.l + Rational(3)) / (Rational(6) * p.k - Rational(2) * p.l + Rational(4));
    case SearchObjective::max_delta:
        if (!delta_feasible(p, *gamma, Rational(0)))
            return std::nullopt;
        return max_delta(p, *gamma);
    }
    return std::nullopt;
}

} // namespace

SearchResult search_pairs(const std::vector<ExponentPair>& seeds, int max_word_len,
                          SearchObjective objective, const std::optional<Rational>& gamma)
{
    if (max_word_len < 0)
        throw PreconditionError("search_pairs: max_word_len must be >= 0");
    if (objective == SearchObjective::max_delta && !gamma)
        throw PreconditionError("search_pairs: the max_delta objective needs gamma");

    std::vector<SearchTraceEntry> trace;
    std::vector<ExponentPair> seen;
    auto is_duplicate = [&](const ExponentPair& p) {
        return std::any_of(seen.begin(), seen.end(), [&](const ExponentPair& s) { return s.same_point(p); });
    };

    std::vector<ExponentPair> level;
    for (const auto& s : seeds) {
        if (!in_validity_domain(s.k, s.l))
            throw PreconditionError("search_pairs: seed " + s.label() + " is not a valid pair");
        level.push_back(s);
    }

    std::optional<std::size_t> best;
    const bool maximize = objective == SearchObjective::max_delta;
    for (int len = 0; len <= max_word_len && !level.empty(); ++len) {
        std::vector<ExponentPair> next;
        for (const auto& p : level) {
            if (is_duplicate(p)) {
                trace.push_back({p, "duplicate", std::nullopt});
                continue;
            }
            seen.push_back(p);
            auto value = evaluate(p, objective, gamma);
            trace.push_back({p, value ? "ok" : "infeasible", value});
            if (value) {
                const auto idx = trace.size() - 1;
                if (!best) {
                    best = idx;
                } else {
                    const auto& cur = trace[*best];
                    const bool better = maximize ? *value > *cur.value : *value < *cur.value;
                    const bool tie = *value == *cur.value && p.label() < cur.pair.label();
                    if (better || tie)
                        best = idx;
                }
            }
            if (len < max_word_len) {
                next.push_back(a_process(p));
                next.push_back(b_process(p));
            }
        }
        level = std::move(next);
    }

    if (!best)
        throw InfeasibleError("search_pairs: no enumerated pair is feasible for " + to_string(objective));
    return {trace[*best].pair, *trace[*best].value, std::move(trace)};
}

} // namespace psp
