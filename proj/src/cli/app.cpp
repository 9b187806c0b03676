#include "betaexp/cli/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "betaexp/algebra.hpp"
#include "betaexp/bernoulli.hpp"
#include "betaexp/cli/output.hpp"
#include "betaexp/counting.hpp"
#include "betaexp/enumeration.hpp"
#include "betaexp/expansions.hpp"
#include "betaexp/limsup.hpp"
#include "betaexp/rate.hpp"

namespace betaexp::cli {
namespace {

using nlohmann::json;

struct Common {
    std::string out_dir;
    int jobs = 1;
    int level_cap = kDefaultLevelCap;
    bool print_json = false;
    ToleranceConfig tol;
};

// Flag values for every subcommand; each command reads the ones it registered.
struct Params {
    double beta = 1.5;
    double x = 0.5;
    double s = 0.1;
    std::vector<double> s_list{0.1};
    int n = 10;
    int depth = 20;
    int m = 1;
    int big_n = 12;
    double lo = kTransversalityEndpoint;
    double hi = 2.0;
    int grid_size = 64;
    std::vector<double> grid;
    std::string method;
    std::string psi = "scaled:log";
    std::string variant = "V";
    bool raw = false;
    bool multiplicity = false;
    bool closed = false;
    double alpha = 2.0;
    int k_min = 8;
    int k_max = 16;
    std::string poly;
    int k = 1;
    double precision = 1e-10;
    int bins = 64;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int terms = 60;
};

std::string allowed_string(AllowedDigits set)
{
    std::string s;
    if (allows(set, 0)) s += '0';
    if (allows(set, 1)) s += (s.empty() ? "1" : "|1");
    return s.empty() ? "-" : s;
}

std::string digits_string(const std::vector<std::uint8_t>& digits)
{
    std::string s;
    for (const auto d : digits) s += static_cast<char>('0' + d);
    return s;
}

json tolerance_json(const ToleranceConfig& tol)
{
    return {{"dedup_tol", tol.dedup_tol}, {"root_margin", tol.root_margin}, {"measure_tol", tol.measure_tol}};
}

// ---- subcommands -------------------------------------------------------------

CommandOutput cmd_sums(const Params& p, const Common& c)
{
    const BaseValue beta(p.beta);
    EnumerationOptions options;
    options.normalized = !p.raw;
    options.with_multiplicity = p.multiplicity;
    options.level_cap = c.level_cap;
    const auto sums = enumerate_sums(beta, p.n, c.tol, options);

    EnumerationOptions exact = options;
    exact.deduplicate = false;
    exact.with_multiplicity = false;
    auto all = enumerate_sums(beta, p.n, c.tol, exact).values;
    const auto words = all.size();
    all.erase(std::unique(all.begin(), all.end()), all.end());

    CommandOutput out;
    std::vector<std::string> header{"index", "value"};
    if (p.multiplicity) header.push_back("multiplicity");
    CsvTable table(header);
    for (std::size_t i = 0; i < sums.values.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), format_real(sums.values[i])};
        if (p.multiplicity) row.push_back(std::to_string((*sums.multiplicities)[i]));
        table.add_row(std::move(row));
    }
    out.table = std::move(table);
    out.summary = {{"beta", p.beta},
                   {"n", p.n},
                   {"normalized", !p.raw},
                   {"words", words},
                   {"distinct", sums.values.size()},
                   {"distinct_exact", all.size()},
                   {"min_gap", sums.values.size() >= 2 ? json(min_gap(sums)) : json(nullptr)}};
    return out;
}

CommandOutput cmd_pairs(const Params& p, const Common& c)
{
    const auto sums = enumerate_sums(BaseValue(p.beta), p.n, c.tol,
                                     EnumerationOptions{true, true, false, c.level_cap});
    const auto st = pair_stats(sums, p.s, c.tol);
    CommandOutput out;
    CsvTable table({"beta", "n", "s", "p_count", "t_count", "density"});
    table.add_row({format_real(st.beta), std::to_string(st.n), format_real(st.s), std::to_string(st.p_count),
                   std::to_string(st.t_count), format_real(st.density)});
    out.table = std::move(table);
    out.summary = {{"beta", st.beta},       {"n", st.n},           {"s", st.s},
                   {"p_count", st.p_count}, {"t_count", st.t_count}, {"density", st.density},
                   {"distinct", sums.size()}};
    return out;
}

CommandOutput cmd_scan(const Params& p, const Common& c)
{
    double lo = p.lo;
    double hi = p.hi;
    int count = p.grid_size;
    if (!p.grid.empty()) {
        if (p.grid.size() != 3) {
            throw DomainError("--grid expects lo,hi,count");
        }
        lo = p.grid[0];
        hi = p.grid[1];
        count = static_cast<int>(p.grid[2]);
        if (count != p.grid[2]) {
            throw DomainError("--grid count must be an integer");
        }
    }
    if (p.n > c.level_cap) {
        throw ResourceError("level exceeds enumeration cap");
    }
    const auto results = grid_scan(lo, hi, count, p.s_list, p.n, c.tol, c.jobs);

    CommandOutput out;
    CsvTable table({"beta", "n", "s", "p_count", "t_count", "density"});
    json per_s = json::array();
    double c_max = 0.0;
    for (const auto& r : results) {
        for (const auto& st : r.per_beta) {
            table.add_row({format_real(st.beta), std::to_string(st.n), format_real(st.s),
                           std::to_string(st.p_count), std::to_string(st.t_count), format_real(st.density)});
        }
        per_s.push_back({{"s", r.s},
                         {"mean_density", r.mean_density},
                         {"fitted_C", r.fitted_c},
                         {"crowded_fraction", r.crowded_fraction}});
        c_max = std::max(c_max, r.fitted_c);
    }
    out.table = std::move(table);
    out.summary = {{"lo", lo}, {"hi", hi}, {"grid_size", count}, {"n", p.n}, {"rule", "midpoint"},
                   {"per_s", per_s}, {"C_max", c_max}};
    return out;
}

CommandOutput cmd_expand(const Params& p, const Common& c)
{
    const BaseValue beta(p.beta);
    const bool lazy = p.method == "lazy";
    if (!lazy && p.method != "greedy") {
        throw DomainError("--method must be greedy or lazy");
    }
    const auto seq = lazy ? lazy_expand(p.x, beta, p.depth, c.tol) : greedy_expand(p.x, beta, p.depth, c.tol);
    CommandOutput out;
    CsvTable table({"depth", "digit", "prefix_value", "remainder", "allowed"});
    std::vector<std::uint8_t> prefix;
    for (std::size_t i = 0; i < seq.digits.size(); ++i) {
        AllowedDigits set = 0;
        for (std::uint8_t d : {std::uint8_t{0}, std::uint8_t{1}}) {
            prefix.push_back(d);
            if (is_extendable_prefix(p.x, prefix, beta, c.tol)) set |= static_cast<AllowedDigits>(1u << d);
            prefix.pop_back();
        }
        prefix.push_back(seq.digits[i]);
        const double v = word_value(prefix, p.beta);
        table.add_row({std::to_string(i + 1), std::to_string(seq.digits[i]), format_real(v),
                       format_real(p.x - v), allowed_string(set)});
    }
    out.table = std::move(table);
    out.summary = {{"x", p.x},
                   {"beta", p.beta},
                   {"method", lazy ? "lazy" : "greedy"},
                   {"digits", digits_string(seq.digits)},
                   {"value", seq.value()}};
    return out;
}

CommandOutput cmd_unique(const Params& p, const Common& c)
{
    const BaseValue beta(p.beta);
    const auto closure = p.closed ? IntervalClosure::closed : IntervalClosure::open;
    const auto report = branching_profile(p.x, beta, p.depth, c.tol, closure);
    CommandOutput out;
    CsvTable table({"depth", "digit", "remainder", "allowed"});
    for (std::size_t i = 0; i < report.path.size(); ++i) {
        table.add_row({std::to_string(i + 1), std::to_string(report.path[i]), format_real(report.remainders[i]),
                       allowed_string(report.allowed[i])});
    }
    out.table = std::move(table);
    out.summary = {{"x", p.x},
                   {"beta", p.beta},
                   {"horizon", report.horizon},
                   {"branched", report.branched},
                   {"unique_up_to", report.unique_up_to},
                   {"verdict", report.branched ? "branches at depth " + std::to_string(report.unique_up_to)
                                               : "unique to depth " + std::to_string(report.horizon)}};
    if (!report.branched && report.horizon >= 1) {
        out.summary["kappa_N"] = kappa_along(p.x, report.path, p.beta);
    }
    return out;
}

CommandOutput cmd_optimal(const Params& p, const Common& c)
{
    const auto report = optimal_chain_search(p.x, BaseValue(p.beta), p.depth, c.tol);
    CommandOutput out;
    CsvTable table({"depth", "best_value", "candidates"});
    for (std::size_t i = 0; i < report.best_values.size(); ++i) {
        table.add_row({std::to_string(i + 1), format_real(report.best_values[i]),
                       std::to_string(report.candidates[i])});
    }
    out.table = std::move(table);
    out.summary = {{"x", p.x}, {"beta", p.beta}, {"depth", p.depth}, {"chain_found", report.chain.has_value()}};
    out.summary["chain"] = report.chain ? json(digits_string(report.chain->digits)) : json(nullptr);
    out.summary["failure_depth"] = report.failure_depth ? json(*report.failure_depth) : json(nullptr);
    return out;
}

CommandOutput cmd_coverage(const Params& p, const Common& c)
{
    const BaseValue beta(p.beta);
    const auto psi = RateFunction::parse(p.psi, p.beta);
    const auto variant = parse_variant(p.variant);
    const auto res = coverage(beta, psi, {p.m, p.big_n}, variant, c.tol, c.jobs, c.level_cap);
    CommandOutput out;
    CsvTable table({"n", "stage_measure", "cumulative_measure"});
    for (std::size_t i = 0; i < res.stage_measures.size(); ++i) {
        table.add_row({std::to_string(p.m + static_cast<int>(i)), format_real(res.stage_measures[i]),
                       format_real(res.cumulative_measures[i])});
    }
    out.table = std::move(table);
    out.summary = {{"beta", res.beta},
                   {"psi", res.psi},
                   {"variant", to_string(variant)},
                   {"m", p.m},
                   {"N", p.big_n},
                   {"window_measure", res.window_measure},
                   {"domain_length", res.domain_length},
                   {"coverage_fraction", res.coverage_fraction},
                   {"note", "finite window of the limsup; no asymptotic verdict"}};
    return out;
}

CommandOutput cmd_member(const Params& p, const Common& c)
{
    const BaseValue beta(p.beta);
    const auto psi = RateFunction::parse(p.psi, p.beta);
    const auto variant = parse_variant(p.variant);
    const StageWindow window{p.m, p.big_n};
    window.validate(c.level_cap);
    const auto res = membership(p.x, beta, psi, window, variant, c.tol);
    CommandOutput out;
    out.summary = {{"x", p.x},           {"beta", p.beta}, {"psi", psi.describe()}, {"variant", to_string(variant)},
                   {"m", p.m},           {"N", p.big_n},   {"member", res.member},  {"witnesses", res.witnesses}};
    return out;
}

CommandOutput cmd_dimension(const Params& p, const Common& c)
{
    const auto est = box_dimension(BaseValue(p.beta), p.alpha, p.big_n, p.k_min, p.k_max, c.tol, c.jobs);
    CommandOutput out;
    CsvTable table({"k", "scale", "level", "count"});
    for (std::size_t i = 0; i < est.counts.size(); ++i) {
        table.add_row({std::to_string(est.exponents[i]), format_real(est.scales[i]), std::to_string(est.levels[i]),
                       std::to_string(est.counts[i])});
    }
    out.table = std::move(table);
    out.summary = {{"beta", p.beta},
                   {"alpha", p.alpha},
                   {"N", p.big_n},
                   {"k_min", p.k_min},
                   {"k_max", p.k_max},
                   {"slope", est.slope},
                   {"intercept", est.intercept},
                   {"target", est.target},
                   {"caveat", "box-counting slope of scale-matched stages; a proxy, not a Hausdorff dimension"}};
    return out;
}

json classification_json(const Classification& cls)
{
    json roots = json::array();
    for (const auto& r : cls.roots) roots.push_back({r.real(), r.imag()});
    json j = {{"polynomial", cls.polynomial.to_string()},
              {"coefficients", cls.polynomial.coefficients()},
              {"roots", roots},
              {"max_residual", cls.max_residual},
              {"conjugate_moduli", cls.conjugate_moduli},
              {"irreducible", to_string(cls.irreducible)},
              {"garsia", to_string(cls.garsia)},
              {"pisot", to_string(cls.pisot)},
              {"norm_reading", "absolute constant term of the monic polynomial"}};
    j["root_in_(1,2)"] = cls.root_in_unit_band ? json(*cls.root_in_unit_band) : json(nullptr);
    j["multinacci_order"] = cls.multinacci_order ? json(*cls.multinacci_order) : json(nullptr);
    j["irreducible_mod"] = cls.irreducible_mod ? json(*cls.irreducible_mod) : json(nullptr);
    return j;
}

CommandOutput cmd_classify(const Params& p, const Common& c)
{
    CommandOutput out;
    out.summary = classification_json(classify(IntegerPolynomial::parse(p.poly), c.tol));
    return out;
}

CommandOutput cmd_multinacci(const Params& p, const Common&)
{
    CommandOutput out;
    CsvTable table({"k", "value"});
    const double v = multinacci_value(p.k, p.precision);
    table.add_row({std::to_string(p.k), format_real(v)});
    out.table = std::move(table);
    out.summary = {{"k", p.k}, {"value", v}, {"polynomial", IntegerPolynomial::multinacci(p.k).to_string()}};
    return out;
}

CommandOutput cmd_kl(const Params& p, const Common&)
{
    CommandOutput out;
    const double v = komornik_loreti(p.precision);
    CsvTable table({"precision", "value"});
    table.add_row({format_real(p.precision), format_real(v)});
    out.table = std::move(table);
    out.summary = {{"precision", p.precision}, {"value", v}};
    return out;
}

CommandOutput cmd_bernoulli(const Params& p, const Common& c)
{
    const BaseValue beta(p.beta);
    const bool mc = p.method == "mc" || p.method == "montecarlo";
    if (!mc && p.method != "exact") {
        throw DomainError("--method must be exact or mc");
    }
    const auto h = mc ? mc_histogram(beta, p.n, p.samples, p.seed, p.bins, c.jobs)
                      : exact_histogram(beta, p.n, p.bins, c.level_cap);
    CommandOutput out;
    CsvTable table({"bin_lo", "bin_hi", "weight"});
    for (int k = 0; k < h.bins; ++k) {
        table.add_row({format_real(h.bin_lo(k)), format_real(h.bin_hi(k)),
                       format_real(h.weights[static_cast<std::size_t>(k)])});
    }
    out.table = std::move(table);
    out.summary = {{"beta", h.beta},
                   {"method", to_string(h.method)},
                   {"n", h.n},
                   {"bins", h.bins},
                   {"samples", h.samples},
                   {"support", {0.0, h.support_hi}},
                   {"reflection_center", h.reflection_center()},
                   {"sup_density", sup_density(h)}};
    out.summary["seed"] = mc ? json(h.seed) : json(nullptr);
    if (mc) out.seeds.push_back(h.seed);
    return out;
}

CommandOutput cmd_series(const Params& p, const Common&, bool alpha_given)
{
    const auto psi = alpha_given ? RateFunction::power(p.alpha) : RateFunction::parse(p.psi, p.beta);
    const auto res = classify_series(psi, p.s, p.terms);
    CommandOutput out;
    CsvTable table({"psi", "s", "terms", "verdict", "partial_sum"});
    table.add_row({psi.describe(), format_real(p.s), std::to_string(res.terms), to_string(res.verdict),
                   format_real(res.partial_sum)});
    out.table = std::move(table);
    out.summary = {{"psi", psi.describe()},
                   {"s", p.s},
                   {"terms", res.terms},
                   {"verdict", to_string(res.verdict)},
                   {"partial_sum", res.partial_sum}};
    return out;
}

// ---- driver ------------------------------------------------------------------

json collect_parameters(const CLI::App& app)
{
    json params = json::object();
    for (const auto* opt : app.get_options()) {
        const auto name = opt->get_single_name();
        if (name.empty() || name == "help") continue;
        if (opt->count() > 0) {
            const auto& results = opt->results();
            params[name] = results.size() == 1 ? json(results.front()) : json(results);
        } else if (!opt->get_default_str().empty()) {
            params[name] = opt->get_default_str();
        }
    }
    return params;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ResourceError*>(&e)) return kExitResource;
    if (dynamic_cast<const Error*>(&e)) return kExitDomain;
    return kExitFailure;
}

int replay(const std::string& manifest_path, const std::vector<std::string>& rest, std::ostream& out,
           std::ostream& err)
{
    std::ifstream f(manifest_path);
    if (!f) {
        err << "cannot read manifest " << manifest_path << "\n";
        return kExitUsage;
    }
    json manifest;
    try {
        manifest = json::parse(f);
    } catch (const json::exception& e) {
        err << "invalid manifest: " << e.what() << "\n";
        return kExitUsage;
    }
    auto args = manifest.at("command_line").get<std::vector<std::string>>();
    // An explicit --out on the replay line redirects the outputs.
    const auto out_it = std::find(rest.begin(), rest.end(), "--out");
    if (out_it != rest.end() && std::next(out_it) != rest.end()) {
        for (auto it = args.begin(); it != args.end();) {
            if (*it == "--out" && std::next(it) != args.end()) {
                it = args.erase(it, it + 2);
            } else {
                ++it;
            }
        }
        args.push_back("--out");
        args.push_back(*std::next(out_it));
    }
    return run(args, out, err);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (!args.empty() && args.front() == "--replay") {
        if (args.size() < 2) {
            err << "--replay needs a manifest path\n";
            return kExitUsage;
        }
        return replay(args[1], {args.begin() + 2, args.end()}, out, err);
    }

    CLI::App app{"Finite experiments on beta-expansions: level sums, pair statistics, limsup coverage, "
                 "expansions, algebraic bases and Bernoulli convolutions.",
                 "betaexp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    app.footer("Exit codes: 0 ok, 2 usage, 3 domain error, 4 resource limit.\n"
               "Replay a run with: betaexp --replay <dir>/<cmd>.manifest.json [--out DIR]");

    Common common;
    if (const char* env = std::getenv(kOutputDirEnv)) {
        common.out_dir = env;
    }
    app.add_option("--out", common.out_dir, "Directory for CSV/JSON outputs and the run manifest (env BETAEXP_OUT)")
        ->capture_default_str();
    app.add_option("--jobs", common.jobs, "Worker threads for scans, stages and sampling")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--level-cap", common.level_cap, "Maximum enumeration level")
        ->check(CLI::Range(0, 40))
        ->capture_default_str();
    app.add_option("--dedup-tol", common.tol.dedup_tol, "Absolute tolerance collapsing level sums")
        ->capture_default_str();
    app.add_option("--root-margin", common.tol.root_margin, "Unit-circle margin for classification")
        ->capture_default_str();
    app.add_option("--measure-tol", common.tol.measure_tol, "Endpoint and measure slack")->capture_default_str();
    app.add_flag("--json", common.print_json, "Print the JSON summary instead of the CSV table");

    Params p;
    std::map<std::string, std::function<CommandOutput()>> commands;
    bool alpha_given = false;

    const auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };

    {
        auto* s = sub("sums", "Sorted level-n sums A_n(beta)");
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--n", p.n, "Level")->required();
        s->add_flag("--raw", p.raw, "Raw sums on [0, 1/(beta-1)] instead of (beta-1)-normalised");
        s->add_flag("--multiplicity", p.multiplicity, "Report the number of words per value");
        commands["sums"] = [&] { return cmd_sums(p, common); };
    }
    {
        auto* s = sub("pairs", "Close-pair count #P and crowded-point count #T");
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--n", p.n, "Level")->required();
        s->add_option("--s", p.s, "Window parameter; pairs within s/2^n")->required();
        commands["pairs"] = [&] { return cmd_pairs(p, common); };
    }
    {
        auto* s = sub("scan", "Pair statistics over a midpoint grid of bases");
        s->add_option("--lo", p.lo, "Lower end of the base range")->capture_default_str();
        s->add_option("--hi", p.hi, "Upper end of the base range")->capture_default_str();
        s->add_option("--grid-size", p.grid_size, "Number of grid midpoints")->capture_default_str();
        s->add_option("--grid", p.grid, "lo,hi,count shorthand")->delimiter(',')->expected(3);
        s->add_option("--n", p.n, "Level")->capture_default_str();
        s->add_option("--s", p.s_list, "Window parameter(s), comma separated")->delimiter(',')->capture_default_str();
        commands["scan"] = [&] { return cmd_scan(p, common); };
    }
    {
        auto* s = sub("expand", "Greedy or lazy digit expansion");
        s->add_option("--x", p.x, "Point in [0, 1/(beta-1)]")->required();
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--depth", p.depth, "Number of digits")->capture_default_str();
        s->add_option("--method", p.method, "greedy or lazy")->default_str("greedy");
        commands["expand"] = [&] { return cmd_expand(p, common); };
    }
    {
        auto* s = sub("unique", "Branching profile and kappa bound up to a horizon");
        s->add_option("--x", p.x, "Point in (0, 1/(beta-1))")->required();
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--depth", p.depth, "Horizon")->default_str("60");
        s->add_flag("--closed", p.closed, "Admit the interval endpoints");
        commands["unique"] = [&] { return cmd_unique(p, common); };
    }
    {
        auto* s = sub("optimal", "Search for an optimal expansion chain");
        s->add_option("--x", p.x, "Point in [0, 1/(beta-1)]")->required();
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--depth", p.depth, "Search depth (<= 20)")->default_str("12");
        commands["optimal"] = [&] { return cmd_optimal(p, common); };
    }
    {
        auto* s = sub("coverage", "Stage and window measures of the truncated limsup set");
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--psi", p.psi, "Rate: power:A, scaled:log|linear|const:C, geometric[:B], table:..., zero")
            ->capture_default_str();
        s->add_option("--m", p.m, "First level")->capture_default_str();
        s->add_option("--N", p.big_n, "Last level")->capture_default_str();
        s->add_option("--variant", p.variant, "W, V or K")->capture_default_str();
        commands["coverage"] = [&] { return cmd_coverage(p, common); };
    }
    {
        auto* s = sub("member", "Membership of x in the truncated limsup set");
        s->add_option("--x", p.x, "Point in the variant domain")->required();
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--psi", p.psi, "Rate function (see coverage)")->capture_default_str();
        s->add_option("--m", p.m, "First level")->capture_default_str();
        s->add_option("--N", p.big_n, "Last level")->capture_default_str();
        s->add_option("--variant", p.variant, "W, V or K")->capture_default_str();
        commands["member"] = [&] { return cmd_member(p, common); };
    }
    {
        auto* s = sub("dimension", "Box-counting slope for Psi(n) = 2^(-n alpha)");
        s->add_option("--beta", p.beta, "Base in (1,2)")->default_str("1.4142135623730951");
        s->add_option("--alpha", p.alpha, "Exponent alpha > 1")->capture_default_str();
        s->add_option("--N", p.big_n, "Deepest level available")->default_str("20");
        s->add_option("--kmin", p.k_min, "Coarsest box 2^-kmin")->capture_default_str();
        s->add_option("--kmax", p.k_max, "Finest box 2^-kmax")->capture_default_str();
        commands["dimension"] = [&] { return cmd_dimension(p, common); };
    }
    {
        auto* s = sub("classify", "Multinacci / Garsia / Pisot classification");
        s->add_option("--poly", p.poly, "Monic integer coefficients, leading first, e.g. 1,0,-2")->required();
        commands["classify"] = [&] { return cmd_classify(p, common); };
    }
    {
        auto* s = sub("multinacci", "Root in (1,2) of x^(k+1) = x^k + ... + 1");
        s->add_option("--k", p.k, "Order k >= 1")->required();
        s->add_option("--precision", p.precision, "Bracket width")->default_str("1e-15");
        commands["multinacci"] = [&] { return cmd_multinacci(p, common); };
    }
    {
        auto* s = sub("kl", "Komornik-Loreti constant");
        s->add_option("--precision", p.precision, "Bracket width (>= 1e-12)")->capture_default_str();
        commands["kl"] = [&] { return cmd_kl(p, common); };
    }
    {
        auto* s = sub("bernoulli", "Histogram of the level-n Bernoulli convolution");
        s->add_option("--beta", p.beta, "Base in (1,2)")->required();
        s->add_option("--n", p.n, "Level")->capture_default_str();
        s->add_option("--bins", p.bins, "Number of bins")->capture_default_str();
        s->add_option("--method", p.method, "exact or mc")->default_str("exact");
        s->add_option("--samples", p.samples, "Monte Carlo samples")->capture_default_str();
        s->add_option("--seed", p.seed, "Monte Carlo seed (64-bit)")->capture_default_str();
        commands["bernoulli"] = [&] { return cmd_bernoulli(p, common); };
    }
    {
        auto* s = sub("series", "Convergence of sum 2^n Psi(n)^s");
        auto* a = s->add_option("--alpha", p.alpha, "Shorthand for --psi power:ALPHA");
        s->add_option("--psi", p.psi, "Rate function (see coverage)")->excludes(a)->capture_default_str();
        s->add_option("--s", p.s, "Exponent s in (0,1]")->required();
        s->add_option("--terms", p.terms, "Terms in the reported partial sum")->capture_default_str();
        s->add_option("--beta", p.beta, "Base used by a bare geometric rate")->capture_default_str();
        commands["series"] = [&, a] {
            alpha_given = a->count() > 0;
            return cmd_series(p, common, alpha_given);
        };
    }

    std::vector<std::string> argv_store{"betaexp"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    // Params is shared between subcommands; CLI11 only assigns flags that are
    // given, so per-command defaults go in before parsing.
    const auto named = std::find_if(args.begin(), args.end(), [&](const std::string& a) { return commands.count(a) > 0; });
    const std::string name = named == args.end() ? std::string{} : *named;
    if (name == "expand") p.method = "greedy";
    if (name == "bernoulli") p.method = "exact";
    if (name == "unique") p.depth = 60;
    if (name == "optimal") p.depth = 12;
    if (name == "dimension") {
        p.beta = std::sqrt(2.0);
        p.big_n = 20;
    }
    if (name == "multinacci") p.precision = 1e-15;

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    const auto* chosen = app.get_subcommands().front();
    const std::string cmd = chosen->get_name();
    const auto started = std::chrono::steady_clock::now();
    CommandOutput result;
    try {
        common.tol.validate();
        result = commands.at(cmd)();
    } catch (const std::exception& e) {
        err << "betaexp " << cmd << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (result.table && !common.print_json) {
        result.table->write(out);
    } else {
        out << result.summary.dump(2) << "\n";
    }

    if (!common.out_dir.empty()) {
        ManifestInfo info;
        info.command_line = args;
        info.subcommand = cmd;
        info.parameters = collect_parameters(*chosen);
        info.parameters.update(collect_parameters(app));
        info.tolerances = tolerance_json(common.tol);
        info.seeds = result.seeds;
        info.duration_seconds = elapsed;
        try {
            write_outputs(common.out_dir, cmd, result, std::move(info));
        } catch (const std::exception& e) {
            err << "betaexp " << cmd << ": " << e.what() << "\n";
            return exit_code_for(e);
        }
    }
    return kExitOk;
}

} // namespace betaexp::cli
