#pragma once

// Exponent-pair calculus in exact rational arithmetic. Nothing in this
// module touches floating point except Rational::to_double for logging.

#include "psp/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psp {

/// (k, l) with 0 <= k <= 1/2 <= l <= 1, plus how it was obtained: the word
/// of processes applied (leftmost applied last) and the seed's name.
struct ExponentPair {
    Rational k;
    Rational l;
    std::string word;
    std::string seed;

    /// Throws PreconditionError outside the validity domain.
    static ExponentPair make(Rational k, Rational l, std::string seed = "custom");

    /// "AB(trivial)" style provenance: the word applied to the named seed.
    std::string label() const { return word.empty() ? seed : word + "(" + seed + ")"; }
    bool same_point(const ExponentPair& o) const { return k == o.k && l == o.l; }
};

bool in_validity_domain(const Rational& k, const Rational& l);

/// (0, 1).
ExponentPair trivial_pair();
/// (13/84, 55/84), used without its epsilon: results derived from it hold
/// "up to epsilon".
ExponentPair bourgain_pair();

ExponentPair a_process(const ExponentPair& p);
/// Throws PreconditionError if the image leaves the validity domain.
ExponentPair b_process(const ExponentPair& p);

/// 4k - 2l + 1, whose positivity every range below requires.
Rational pair_margin(const ExponentPair& p);

/// max{13/15, (12k+10)/(12k-2l+13)}; the admissible c range is (1, 1/result).
/// Throws InfeasibleError when 4k - 2l + 1 <= 0.
Rational gamma_threshold(const ExponentPair& p);

enum class EpsShift { none, plus, minus };

/// An exponent of x, open by an arbitrarily small epsilon in the given
/// direction (x^{value + eps} for plus).
struct ExponentBound {
    Rational value;
    EpsShift shift = EpsShift::none;
};

std::string to_string(const ExponentBound& b);

struct ConstraintReport {
    bool feasible = false;
    std::optional<Rational> gamma_lower;
    /// Candidate N lower-bound exponents, in the order the constraint lists them.
    std::vector<Rational> n_lower_exponents;
    /// The effective lower bound after combining the candidates.
    std::optional<ExponentBound> n_lower;
    std::optional<ExponentBound> n_upper;
    std::string binding;
};

/// Type I admissibility: (5k-l+3)/(6k-2l+4) < gamma < 1 and
/// N >= x^{min{(1-g)+1/2, max{((4k+6)(1-g)+2k-1)/(4k-2l+1), 2(1-g)}} + eps}.
/// Uses the hypothesis 4k - 2l + 1 > 0; a zero margin throws PreconditionError,
/// a negative one reports infeasible.
ConstraintReport type1_constraints(const ExponentPair& p, const Rational& gamma);

/// Type II window x^{1-g+2d+eps} <= N <= x^{5g-4-6d-eps}, feasible iff
/// 6(1-g) + 8d < 1. Requires 0 <= delta <= 1 - gamma.
ConstraintReport type2_range(const Rational& gamma, const Rational& delta);

/// Both strict inequalities of the generalized (delta > 0) theorem.
/// Returns false when 4k - 2l + 1 <= 0 or delta lies outside [0, 1 - gamma].
bool delta_feasible(const ExponentPair& p, const Rational& gamma, const Rational& delta);

struct MaxDeltaReport {
    Rational value;
    /// True when delta <= 1 - gamma is the binding constraint, so the
    /// feasible set is the closed [0, value]; otherwise it is [0, value).
    bool closed = false;
    std::string binding;
};

MaxDeltaReport max_delta_report(const ExponentPair& p, const Rational& gamma);
/// Supremum of feasible delta. Throws InfeasibleError if delta = 0 is infeasible.
Rational max_delta(const ExponentPair& p, const Rational& gamma);

enum class SearchObjective { gamma_threshold, type1_gamma_bound, max_delta };

std::optional<SearchObjective> parse_objective(std::string_view name);
std::string to_string(SearchObjective o);

struct SearchTraceEntry {
    ExponentPair pair;
    /// "ok", "duplicate" or "infeasible".
    std::string status;
    std::optional<Rational> value;
};

struct SearchResult {
    ExponentPair best;
    Rational value;
    std::vector<SearchTraceEntry> trace;
};

/// Applies every {A,B} word of length <= max_word_len to each seed,
/// breadth-first, deduplicating by exact (k, l) and keeping the first
/// (shortest) word. Thresholds are minimized, max_delta is maximized; ties
/// break on the label. `gamma` is required for the max_delta objective.
/// Throws InfeasibleError when no enumerated pair is feasible.
SearchResult search_pairs(const std::vector<ExponentPair>& seeds, int max_word_len,
                          SearchObjective objective,
                          const std::optional<Rational>& gamma = std::nullopt);

} // namespace psp
