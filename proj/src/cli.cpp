#include "psp/cli.hpp"

#include "psp/balog_friedlander.hpp"
#include "psp/error.hpp"
#include "psp/exppairs.hpp"
#include "psp/expsums.hpp"
#include "psp/heath_brown.hpp"
#include "psp/ps_sequence.hpp"
#include "psp/sieve.hpp"
#include "psp/vaaler.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace psp {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- output

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_cell(const Cell& c)
{
    struct V {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(double d) const { return shortest(d); }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(std::uint64_t i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(V{}, c);
}

nlohmann::ordered_json json_cell(const Cell& c)
{
    return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

struct Provenance {
    std::string command;
    std::map<std::string, std::string> config;
};

std::string timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void write_csv(std::ostream& os, const Provenance& prov, const Table& t)
{
    os << "# psp " << kVersion << "\n# command: " << prov.command << "\n";
    for (const auto& [k, v] : prov.config)
        os << "# " << k << "=" << v << "\n";
    os << "# generated: " << timestamp() << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const Provenance& prov, const Table& t)
{
    nlohmann::ordered_json doc;
    doc["provenance"]["version"] = kVersion;
    doc["provenance"]["command"] = prov.command;
    doc["provenance"]["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : prov.config)
        doc["provenance"]["config"][k] = v;
    doc["provenance"]["generated"] = timestamp();
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            r[t.columns[i]] = json_cell(row[i]);
        doc["rows"].push_back(std::move(r));
    }
    os << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------- input

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& key, const std::string& text)
{
    auto fail = [&] { return UsageError("--" + key + ": expected a non-negative integer, got '" + text + "'"); };
    if (const auto caret = text.find('^'); caret != std::string::npos) {
        const std::uint64_t base = parse_uint(key, text.substr(0, caret));
        const std::uint64_t expo = parse_uint(key, text.substr(caret + 1));
        unsigned __int128 v = 1;
        for (std::uint64_t i = 0; i < expo; ++i) {
            v *= base;
            if (v > std::numeric_limits<std::uint64_t>::max())
                throw fail();
        }
        return static_cast<std::uint64_t>(v);
    }
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec == std::errc() && res.ptr == text.data() + text.size())
        return v;
    // Scientific notation such as 1e6, accepted when the value is integral.
    double d = 0;
    const auto rd = std::from_chars(text.data(), text.data() + text.size(), d);
    if (rd.ec != std::errc() || rd.ptr != text.data() + text.size() || !(d >= 0) || d > 1.8e19 ||
        d != std::floor(d))
        throw fail();
    return static_cast<std::uint64_t>(d);
}

Rational parse_rational(const std::string& key, const std::string& text)
{
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("--" + key + ": expected p/q, got '" + text + "'");
    }
}

struct RealValue {
    double value;
    AlphaKind kind;
};

RealValue parse_real_kind(const std::string& key, const std::string& text)
{
    if (text == "sqrt2")
        return {std::sqrt(2.0), AlphaKind::sqrt2};
    if (text == "phi")
        return {(1.0 + std::sqrt(5.0)) / 2.0, AlphaKind::golden_ratio};
    if (text.find('/') != std::string::npos)
        return {parse_rational(key, text).to_double(), AlphaKind::decimal};
    double d = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), d);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw UsageError("--" + key + ": expected a real number, got '" + text + "'");
    return {d, AlphaKind::decimal};
}

double parse_real(const std::string& key, const std::string& text) { return parse_real_kind(key, text).value; }

/// String-bound options of one subcommand; values are parsed on demand.
class Args {
public:
    explicit Args(CLI::App* app) : app_(app) {}

    void add(const std::string& name, const std::string& help, bool required = false)
    {
        auto* opt = app_->add_option("--" + name, values_[name], help);
        if (required)
            opt->required();
    }
    void add_flag(const std::string& name, const std::string& help)
    {
        app_->add_flag("--" + name, flags_[name], help);
    }

    CLI::App* app() const { return app_; }
    bool has(const std::string& name) const { return app_->get_option("--" + name)->count() > 0; }
    const std::string& text(const std::string& name) const { return values_.at(name); }
    bool flag(const std::string& name) const { return flags_.at(name); }

    std::uint64_t u64(const std::string& n) const { return parse_uint(n, text(n)); }
    std::uint64_t u64(const std::string& n, std::uint64_t def) const { return has(n) ? u64(n) : def; }
    double real(const std::string& n) const { return parse_real(n, text(n)); }
    double real(const std::string& n, double def) const { return has(n) ? real(n) : def; }
    Rational rational(const std::string& n) const { return parse_rational(n, text(n)); }
    GammaExponent exponent(const std::string& n = "c") const { return GammaExponent::from_c(real(n)); }

    std::map<std::string, std::string> echo() const
    {
        std::map<std::string, std::string> out;
        for (const auto& [k, v] : values_)
            if (has(k))
                out[k] = v;
        for (const auto& [k, v] : flags_)
            if (has(k))
                out[k] = v ? "true" : "false";
        return out;
    }

private:
    CLI::App* app_;
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> flags_;
};

struct Context {
    Parallelism par;
    double max_terms = kDefaultMaxTerms;
    std::ostream* summary = nullptr;
};

using Handler = std::function<Table(const Args&, Context&)>;

struct Command {
    std::string name;
    std::unique_ptr<Args> args;
    Handler run;
};

SieveTable sieve_for(std::uint64_t limit, const Context& ctx)
{
    return SieveTable(std::max<std::uint64_t>(limit, 2), ctx.par);
}

// ---------------------------------------------------------------- commands

ExponentPair pair_from_args(const Args& a)
{
    if (a.has("k") || a.has("l")) {
        if (!a.has("k") || !a.has("l"))
            throw UsageError("exppair eval: --k and --l go together");
        return ExponentPair::make(a.rational("k"), a.rational("l"));
    }
    if (!a.has("seed"))
        throw UsageError("exppair eval: give --k/--l or --seed [--word]");
    ExponentPair p;
    if (a.text("seed") == "trivial")
        p = trivial_pair();
    else if (a.text("seed") == "bourgain")
        p = bourgain_pair();
    else
        throw UsageError("--seed: expected trivial or bourgain");
    const std::string word = a.has("word") ? a.text("word") : "";
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == 'A')
            p = a_process(p);
        else if (*it == 'B')
            p = b_process(p);
        else
            throw UsageError("--word: only the letters A and B are allowed");
    }
    return p;
}

std::string pair_word(const ExponentPair& p) { return p.seed == "custom" ? std::string("custom") : p.label(); }

Table exppair_eval(const Args& a, Context& ctx)
{
    const ExponentPair p = pair_from_args(a);
    const Rational thr = gamma_threshold(p);
    const Rational cb = Rational(1) / thr;
    *ctx.summary << "threshold " << thr.str() << ", c-bound " << cb.str() << "\n";
    Table t{{"word", "k", "l", "threshold", "c_bound"}, {}};
    std::vector<Cell> row{pair_word(p), p.k.str(), p.l.str(), thr.str(), cb.str()};
    if (a.has("gamma")) {
        const Rational g = a.rational("gamma");
        const Rational d = a.has("delta") ? a.rational("delta") : Rational(0);
        const ConstraintReport t1 = type1_constraints(p, g);
        const MaxDeltaReport md = max_delta_report(p, g);
        t.columns.insert(t.columns.end(),
                         {"gamma", "delta", "delta_feasible", "max_delta", "max_delta_closed", "type1_feasible"});
        const bool has_delta = delta_feasible(p, g, Rational(0));
        row.insert(row.end(), {g.str(), d.str(), delta_feasible(p, g, d), has_delta ? md.value.str() : "",
                               has_delta && md.closed, t1.feasible});
    }
    t.rows.push_back(std::move(row));
    return t;
}

Table exppair_search(const Args& a, Context& ctx)
{
    std::vector<ExponentPair> seeds;
    std::stringstream ss(a.has("seeds") ? a.text("seeds") : "trivial,bourgain");
    for (std::string s; std::getline(ss, s, ',');) {
        s = trim(s);
        if (s == "trivial")
            seeds.push_back(trivial_pair());
        else if (s == "bourgain")
            seeds.push_back(bourgain_pair());
        else
            throw UsageError("--seeds: expected a comma list of trivial, bourgain");
    }
    const auto obj = parse_objective(a.has("objective") ? a.text("objective") : "gamma_threshold");
    if (!obj)
        throw UsageError("--objective: expected gamma_threshold, type1_gamma_bound or max_delta");
    std::optional<Rational> gamma;
    if (a.has("gamma"))
        gamma = a.rational("gamma");
    const auto depth = static_cast<int>(a.u64("depth", 6));
    const SearchResult r = search_pairs(seeds, depth, *obj, gamma);
    *ctx.summary << "best " << r.best.label() << " " << to_string(*obj) << " " << r.value.str() << "\n";
    Table t{{"word", "k", "l", "value"}, {}};
    if (a.flag("trace")) {
        t.columns.push_back("status");
        for (const auto& e : r.trace)
            t.rows.push_back({e.pair.label(), e.pair.k.str(), e.pair.l.str(), e.value ? e.value->str() : "",
                              e.status});
    } else {
        t.rows.push_back({r.best.label(), r.best.k.str(), r.best.l.str(), r.value.str()});
    }
    return t;
}

Table ps_row_table(const PsCountReport& r)
{
    return {{"x", "c", "q", "a", "count", "main_term", "ratio"},
            {{r.x, r.c, r.q, r.a, r.count, r.main_term, r.ratio}}};
}

Table ps_count(const Args& a, Context& ctx)
{
    const std::uint64_t x = a.u64("x");
    const auto table = sieve_for(x, ctx);
    const auto r = ps_prime_count(table, x, a.exponent());
    *ctx.summary << "count " << r.count << ", ratio " << shortest(r.ratio) << "\n";
    return ps_row_table(r);
}

Table ps_ap(const Args& a, Context& ctx)
{
    const std::uint64_t x = a.u64("x");
    const auto table = sieve_for(x, ctx);
    const auto r = ps_prime_count_ap(table, x, a.exponent(), a.u64("q"), a.u64("a"));
    *ctx.summary << "count " << r.count << ", ratio " << shortest(r.ratio) << "\n";
    return ps_row_table(r);
}

Table ps_beatty(const Args& a, Context& ctx)
{
    const std::uint64_t x = a.u64("x");
    const RealValue alpha = parse_real_kind("alpha", a.text("alpha"));
    const double beta = a.real("beta", 0.0);
    const auto params = BeattyParams::make(alpha.value, beta, alpha.kind);
    const auto table = sieve_for(x, ctx);
    const auto r = ps_beatty_prime_count(table, x, a.exponent(), params);
    *ctx.summary << "count " << r.count << ", ratio " << shortest(r.ratio) << "\n";
    Table t = ps_row_table(r);
    t.columns.insert(t.columns.end(), {"alpha", "beta"});
    t.rows[0].insert(t.rows[0].end(), {alpha.value, beta});
    return t;
}

Table goldbach3(const Args& a, Context& ctx)
{
    const std::uint64_t n = a.u64("N");
    const double c = a.real("c", 0.0);
    auto pick = [&](const char* name) {
        if (a.has(name))
            return a.real(name);
        if (!a.has("c"))
            throw UsageError(std::string("goldbach3: give --c or --") + name);
        return c;
    };
    const double c1 = pick("c1"), c2 = pick("c2"), c3 = pick("c3");
    const auto table = sieve_for(n, ctx);
    const auto r = goldbach3_count(table, n, c1, c2, c3, a.u64("P", 1'000'000));
    const double ratio = r.predicted != 0.0 ? static_cast<double>(r.exact) / r.predicted : 0.0;
    *ctx.summary << "exact " << r.exact << ", predicted " << shortest(r.predicted)
                 << (r.degenerate ? " (even N: prediction vanishes)" : "") << "\n";
    return {{"N", "c1", "c2", "c3", "exact", "predicted", "ratio", "singular_series"},
            {{r.n, r.c1, r.c2, r.c3, r.exact, r.predicted, ratio, r.singular_series}}};
}

Table singular(const Args& a, Context& ctx)
{
    const auto r = singular_series(a.u64("N"), a.u64("P", 100'000));
    *ctx.summary << "value " << shortest(r.value) << "\n";
    return {{"N", "P", "value", "tail_bound"}, {{r.n, r.truncation, r.value, r.tail_bound}}};
}

Table expsum_theorem(const Args& a, Context& ctx)
{
    ExpSumSpec s;
    s.x = a.u64("x");
    s.g = a.exponent();
    s.alpha = a.real("alpha", 0.0);
    s.u = a.real("u", 0.0);
    s.H = a.u64("H", natural_h(s.x, s.g));
    if (a.has("n-lo"))
        s.n_lo = a.u64("n-lo");
    if (a.has("n-hi"))
        s.n_hi = a.u64("n-hi");
    if (a.has("h-lo"))
        s.h_lo = a.u64("h-lo");
    if (a.has("h-hi"))
        s.h_hi = a.u64("h-hi");
    s.validate();
    const auto table = sieve_for(2 * s.x, ctx);
    const double v = theorem_sum(table, s, a.flag("scaled"), ctx.par, ctx.max_terms);
    const double xd = static_cast<double>(s.x);
    *ctx.summary << "value/x " << shortest(v / xd) << "\n";
    return {{"x", "H", "alpha", "u", "c", "value", "value_over_x"},
            {{s.x, s.H, s.alpha, s.u, s.g.c(), v, v / xd}}};
}

std::vector<Complex> coefficient_vector(const std::string& key, const std::string& kind, IndexRange r,
                                        const SieveTable& table)
{
    std::vector<Complex> out;
    out.reserve(r.size());
    for (std::uint64_t n = r.lo + 1; n <= r.hi; ++n) {
        if (kind == "one")
            out.emplace_back(1.0);
        else if (kind == "log")
            out.emplace_back(std::log(static_cast<double>(n)));
        else if (kind == "mobius")
            out.emplace_back(static_cast<double>(mobius(table, n)));
        else
            throw UsageError("--" + key + ": expected one, log or mobius");
    }
    return out;
}

Table expsum_bilinear(const Args& a, Context& ctx)
{
    BilinearSpec s;
    const std::string kind = a.has("kind") ? a.text("kind") : "type1";
    if (kind == "type1")
        s.kind = BilinearKind::type1;
    else if (kind == "type2")
        s.kind = BilinearKind::type2;
    else
        throw UsageError("--kind: expected type1 or type2");
    s.x = a.u64("x");
    s.g = a.exponent();
    s.alpha = a.real("alpha", 0.0);
    s.u = a.real("u", 0.0);
    s.H = a.u64("H", natural_h(s.x, s.g));
    s.m_range = {a.u64("m-lo"), a.u64("m-hi")};
    s.n_range = {a.u64("n-lo"), a.u64("n-hi")};
    if (s.m_range.hi <= s.m_range.lo || s.n_range.hi <= s.n_range.lo)
        throw PreconditionError("bilinear: ranges (lo, hi] must be non-empty");
    const auto table = sieve_for(std::max(s.m_range.hi, s.n_range.hi), ctx);
    s.a = coefficient_vector("a", a.has("a") ? a.text("a") : "one", s.m_range, table);
    s.b = coefficient_vector("b", a.has("b") ? a.text("b") : (kind == "type1" ? "one" : "mobius"), s.n_range,
                             table);
    s.delta.assign(s.H, Complex(1.0));
    const Complex v = bilinear_sum(s, ctx.max_terms);
    *ctx.summary << "|S| " << shortest(std::abs(v)) << "\n";
    return {{"kind", "x", "H", "alpha", "u", "c", "m_lo", "m_hi", "n_lo", "n_hi", "re", "im", "abs"},
            {{kind, s.x, s.H, s.alpha, s.u, s.g.c(), s.m_range.lo, s.m_range.hi, s.n_range.lo, s.n_range.hi,
              v.real(), v.imag(), std::abs(v)}}};
}

Table expsum_vdc(const Args& a, Context& ctx)
{
    const double h = a.real("h");
    const GammaExponent g = a.exponent();
    const double alpha = a.real("alpha", 0.0);
    const std::uint64_t n = a.u64("N");
    const auto r = vdc_bound_check(h, g, alpha, n);
    *ctx.summary << "empirical C " << shortest(r.empirical_c) << "\n";
    return {{"h", "c", "alpha", "N", "lhs", "rhs_unit", "empirical_C"},
            {{h, g.c(), alpha, n, r.lhs, r.rhs_unit, r.empirical_c}}};
}

Table expsum_bprocess(const Args& a, Context& ctx)
{
    const double h = a.real("h");
    const GammaExponent g = a.exponent();
    const std::uint64_t n = a.u64("N");
    const double lo = a.real("a", static_cast<double>(n + 1));
    const double hi = a.real("b", static_cast<double>(2 * n));
    const auto r = b_process_compare(h, g, n, lo, hi);
    *ctx.summary << "error/bound " << shortest(r.error / r.bound) << (r.degenerate ? " (degenerate)" : "")
                 << "\n";
    return {{"h", "c", "N", "a", "b", "direct_re", "direct_im", "stationary_re", "stationary_im", "error", "bound",
             "stationary_points", "degenerate"},
            {{h, g.c(), n, lo, hi, r.direct.real(), r.direct.imag(), r.stationary.real(), r.stationary.imag(),
              r.error, r.bound, static_cast<std::uint64_t>(r.stationary_points), r.degenerate}}};
}

Table expsum_vaaler(const Args& a, Context& ctx)
{
    const auto H = static_cast<std::int64_t>(a.u64("H"));
    const std::uint64_t points = a.u64("points", 100'000);
    const auto r = vaaler_grid_check(VaalerApprox(H), points, ctx.par);
    *ctx.summary << "max excess " << shortest(r.max_excess) << "\n";
    return {{"H", "points", "max_excess", "worst_t"}, {{H, r.points, r.max_excess, r.worst_t}}};
}

Table hb_verify_cmd(const Args& a, Context& ctx)
{
    HbParams p;
    p.x = a.u64("x");
    p.J = static_cast<int>(a.u64("J", 3));
    p.Z = a.u64("Z", HbParams::minimal_cutoff(p.x, p.J));
    p.validate();
    const auto table = sieve_for(2 * p.x, ctx);
    const auto r = hb_verify(table, p);
    *ctx.summary << "mismatches: " << r.mismatches << "\n";
    return {{"x", "J", "Z", "checked", "mismatches"},
            {{p.x, static_cast<std::uint64_t>(p.J), p.Z, r.checked, r.mismatches}}};
}

Table bf_scan(const Args& a, Context& ctx)
{
    const std::uint64_t n = a.u64("N");
    const auto table = sieve_for(n, ctx);
    const auto r = alpha_scan(table, n, a.exponent(), a.u64("grid", 1000), ctx.par);
    const double nd = static_cast<double>(n);
    *ctx.summary << "max discrepancy/N " << shortest(r.max_discrepancy / nd) << " at alpha "
                 << shortest(r.argmax_alpha) << "\n";
    Table t{{"alpha", "discrepancy", "discrepancy_over_N"}, {}};
    for (const auto& row : r.rows)
        t.rows.push_back({row.alpha, row.discrepancy, row.discrepancy / nd});
    return t;
}

// ---------------------------------------------------------------- config

std::vector<std::string> config_tokens(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("--config: cannot read '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty() || key == "config")
            throw UsageError(path + ":" + std::to_string(lineno) + ": bad key");
        if (key == "max_terms")
            out.push_back("--max-terms=" + trim(line.substr(eq + 1)));
        else
            out.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
    }
    return out;
}

std::string find_config(const std::vector<std::string>& args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    return path;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Piatetski-Shapiro primes, exponent pairs and exponential sums", "psp"};
    app.set_help_flag("--help", "print this help message and exit");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string format = "csv", output, config;
    std::string threads_text = "0", max_terms_text;
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads_text, "worker threads (0 = hardware)");
    app.add_option("--output", output, "write results to this file");
    app.add_option("--config", config, "flat key=value file; its values override flags");
    app.add_option("--max-terms", max_terms_text, "term-evaluation budget for direct sums");

    std::vector<Command> commands;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Handler run) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        std::string full = parent == &app ? name : parent->get_name() + " " + name;
        commands.push_back({full, std::make_unique<Args>(sub), std::move(run)});
        return commands.back().args.get();
    };
    auto group = [&](const std::string& name, const std::string& help) {
        CLI::App* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };

    {
        CLI::App* g = group("exppair", "exponent-pair calculus");
        Args* e = leaf(g, "eval", "threshold and ranges for one pair", exppair_eval);
        e->add("k", "k as p/q");
        e->add("l", "l as p/q");
        e->add("seed", "trivial or bourgain (instead of --k/--l)");
        e->add("word", "A/B word applied to the seed, leftmost last");
        e->add("gamma", "gamma as p/q; adds range columns");
        e->add("delta", "delta as p/q (default 0)");
        Args* s = leaf(g, "search", "best pair reachable by A/B words", exppair_search);
        s->add("depth", "maximum word length (default 6)");
        s->add("objective", "gamma_threshold, type1_gamma_bound or max_delta");
        s->add("gamma", "gamma as p/q, for max_delta");
        s->add("seeds", "comma list of seeds (default trivial,bourgain)");
        s->add_flag("trace", "list every enumerated pair");
    }
    {
        CLI::App* g = group("ps", "prime counts in the PS sequence");
        Args* c = leaf(g, "count", "PS primes up to x", ps_count);
        c->add("x", "upper bound", true);
        c->add("c", "exponent in (1, 2)", true);
        Args* p = leaf(g, "ap", "PS primes in a residue class", ps_ap);
        p->add("x", "upper bound", true);
        p->add("c", "exponent in (1, 2)", true);
        p->add("q", "modulus", true);
        p->add("a", "residue", true);
        Args* b = leaf(g, "beatty", "PS primes in a Beatty sequence", ps_beatty);
        b->add("x", "upper bound", true);
        b->add("c", "exponent in (1, 2)", true);
        b->add("alpha", "slope > 1: decimal, sqrt2 or phi", true);
        b->add("beta", "offset (default 0)");
    }
    {
        Args* g = leaf(&app, "goldbach3", "ternary Goldbach count with PS primes", goldbach3);
        g->add("N", "odd target in [10^4, 10^6]", true);
        g->add("c", "common exponent");
        g->add("c1", "exponent of p1");
        g->add("c2", "exponent of p2");
        g->add("c3", "exponent of p3");
        g->add("P", "singular-series truncation (default 10^6)");
        Args* s = leaf(&app, "singular-series", "truncated ternary singular series", singular);
        s->add("N", "target", true);
        s->add("P", "truncation (default 10^5)");
    }
    {
        CLI::App* g = group("expsum", "exponential sums");
        Args* t = leaf(g, "theorem", "sum over h of |sum over n of Lambda(n) e(...)|", expsum_theorem);
        for (const char* k : {"x", "c"})
            t->add(k, "required", true);
        t->add("alpha", "frequency (default 0)");
        t->add("u", "shift in [0, 1] (default 0)");
        t->add("H", "h range (H, 2H] (default ceil(x^(1-gamma)))");
        for (const char* k : {"n-lo", "n-hi", "h-lo", "h-hi"})
            t->add(k, "optional subinterval endpoint");
        t->add_flag("scaled", "multiply by min{1, x^(1-gamma)/H}");
        Args* b = leaf(g, "bilinear", "Type I or Type II bilinear sum", expsum_bilinear);
        for (const char* k : {"x", "c", "m-lo", "m-hi", "n-lo", "n-hi"})
            b->add(k, "required", true);
        b->add("kind", "type1 or type2");
        b->add("alpha", "frequency (default 0)");
        b->add("u", "shift in [0, 1] (default 0)");
        b->add("H", "h range (H, 2H]");
        b->add("a", "a_m: one, log or mobius");
        b->add("b", "b_n: one, log or mobius");
        Args* v = leaf(g, "vdc", "second-derivative test", expsum_vdc);
        v->add("h", "frequency", true);
        v->add("c", "exponent", true);
        v->add("N", "range (N, 2N]", true);
        v->add("alpha", "linear frequency (default 0)");
        Args* p = leaf(g, "bprocess", "stationary-phase comparison", expsum_bprocess);
        p->add("h", "frequency", true);
        p->add("c", "exponent", true);
        p->add("N", "scale", true);
        p->add("a", "left end (default N+1)");
        p->add("b", "right end (default 2N)");
        Args* q = leaf(g, "vaaler", "sawtooth approximation grid check", expsum_vaaler);
        q->add("H", "order", true);
        q->add("points", "grid size (default 10^5)");
    }
    {
        CLI::App* g = group("hb", "Heath-Brown identity");
        Args* v = leaf(g, "verify", "compare the identity with Lambda on (x, 2x]", hb_verify_cmd);
        v->add("x", "range (x, 2x]", true);
        v->add("J", "number of factors (default 3)");
        v->add("Z", "cutoff (default least Z with Z^J >= 2x)");
    }
    {
        CLI::App* g = group("bf", "Balog-Friedlander discrepancy");
        Args* s = leaf(g, "scan", "discrepancy over an alpha grid", bf_scan);
        s->add("N", "prime bound", true);
        s->add("c", "exponent", true);
        s->add("grid", "grid size (default 1000)");
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (const std::string path = find_config(args); !path.empty()) {
            const auto extra = config_tokens(path);
            args.insert(args.end(), extra.begin(), extra.end());
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return 64;
    } catch (const UsageError& e) {
        err << "psp: " << e.what() << "\n";
        return 64;
    }

    const Command* chosen = nullptr;
    for (const Command& c : commands)
        if (c.args->app()->parsed())
            chosen = &c;
    if (!chosen) {
        err << app.help();
        return 64;
    }

    try {
        Context ctx;
        ctx.summary = &err;
        ctx.par.threads = static_cast<unsigned>(parse_uint("threads", threads_text));
        if (!max_terms_text.empty())
            ctx.max_terms = parse_real("max-terms", max_terms_text);
        else if (const char* env = std::getenv("PSPRIMES_MAX_TERMS"))
            ctx.max_terms = parse_real("PSPRIMES_MAX_TERMS", env);

        const Table table = chosen->run(*chosen->args, ctx);
        Provenance prov{chosen->name, chosen->args->echo()};
        if (!max_terms_text.empty())
            prov.config["max_terms"] = max_terms_text;

        std::ofstream file;
        std::ostream* sink = &out;
        if (!output.empty()) {
            file.open(output);
            if (!file)
                throw std::runtime_error("cannot open " + output);
            sink = &file;
        }
        if (format == "json")
            write_json(*sink, prov, table);
        else
            write_csv(*sink, prov, table);
        return 0;
    } catch (const UsageError& e) {
        err << "psp: " << e.what() << "\n";
        return 64;
    } catch (const InfeasibleError& e) {
        err << "psp: infeasible: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "psp: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimitError& e) {
        err << "psp: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "psp: internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace psp
