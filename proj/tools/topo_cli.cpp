// topo_cli: command-line front end. Every command prints a JSON report (to
// stdout, or to --json PATH) and exits 0 when all of its checks pass, 1 when
// a check fails, 2 on a usage error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "topo.hpp"
#include "topo/verify.hpp"

using json = nlohmann::ordered_json;
using namespace topo;

namespace {

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Globals
{
    unsigned prec = kDefaultPrecision;
    std::uint64_t seed = 20240601;
    std::string json_path;
    std::string dot_path;
    std::uint64_t budget = kDefaultNodeBudget;
    std::string form, root;
    std::string tol;
    int depth = -1;
};

std::vector<Int> parse_triple(std::string const & text, char const * what)
{
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.emplace_back(item);
        } catch (std::exception const &) {
            throw UsageError(std::string(what) + ": not an integer: '" + item + "'");
        }
    }
    if (out.size() != 3)
        throw UsageError(std::string(what) + " needs three comma-separated integers");
    return out;
}

json real_json(Real const & x)
{
    int digits = static_cast<int>(std::ceil(x.precision() * 0.30103)) + 1;
    return {{"decimal", x.to_string(digits)}, {"bits", x.precision()}};
}

json series_json(SeriesResult const & r)
{
    return {{"value", real_json(r.value)},         {"error_bound", real_json(r.error_bound)},
            {"bound", bound_name(r.bound)},         {"method", method_name(r.method)},
            {"terms", r.terms},                     {"depth", r.depth},
            {"note", r.note}};
}

template <class T>
json edge_json(BasicEdge<T> const & e)
{
    return json::array({e.p.str(), e.h.str(), e.q.str()});
}

json form_json(QuadraticForm const & f) { return json::array({f.a.str(), f.b.str(), f.c.str()}); }

class Report
{
public:
    Report(std::string command, Globals const & g) : g_(g)
    {
        doc_["command"] = std::move(command);
        doc_["inputs"] = json::object();
        doc_["precision_bits"] = g.prec;
        doc_["results"] = json::object();
        doc_["checks"] = json::array();
    }

    json & inputs() { return doc_["inputs"]; }
    json & results() { return doc_["results"]; }

    void check(std::string name, bool pass, json measured = nullptr, json limit = nullptr)
    {
        json c{{"name", std::move(name)}, {"pass", pass}};
        if (!measured.is_null())
            c["measured"] = std::move(measured);
        if (!limit.is_null())
            c["limit"] = std::move(limit);
        doc_["checks"].push_back(std::move(c));
        all_ &= pass;
    }

    /// |value - target| <= tol
    void close(std::string name, Real const & value, Real const & target, Real const & tol)
    {
        Real dev = abs(value - target);
        check(std::move(name), dev <= tol, real_json(dev), real_json(tol));
    }

    void fail_with(std::string const & what)
    {
        doc_["error"] = what;
        all_ = false;
    }

    int finish(double seconds)
    {
        doc_["pass"] = all_;
        std::ostringstream ws;
        ws.precision(6);
        ws << std::fixed << seconds;
        doc_["wall_clock_seconds"] = ws.str();
        std::string text = doc_.dump(2) + "\n";
        if (g_.json_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(g_.json_path);
            if (!out)
                throw UsageError("cannot write " + g_.json_path);
            out << text;
        }
        return all_ ? 0 : 1;
    }

private:
    Globals const & g_;
    json doc_;
    bool all_ = true;
};

Real tol_or(Globals const & g, char const * fallback)
{
    Real t = Real::from_string(g.tol.empty() ? fallback : g.tol, g.prec);
    if (!(t.sign() > 0))
        throw UsageError("--tol must be positive");
    return t;
}

OrientedEdge edge_from_flags(Globals const & g)
{
    if (!g.root.empty()) {
        auto v = parse_triple(g.root, "--root");
        return {v[0], v[1], v[2]};
    }
    if (!g.form.empty()) {
        auto v = parse_triple(g.form, "--form");
        return root_edge(QuadraticForm{v[0], v[1], v[2]});
    }
    throw UsageError("needs --root p,h,q or --form a,b,c");
}

// ---------------------------------------------------------------------------

void cmd_identities(Report & rep, Globals const & g)
{
    std::vector<VertexStar> stars;
    if (!g.root.empty() || !g.form.empty()) {
        auto e = edge_from_flags(g);
        rep.inputs()["root"] = edge_json(e);
        stars.push_back(vertex_star(e));
    } else {
        std::mt19937_64 rng(g.seed);
        std::uniform_int_distribution<int> lab(-40, 40);
        while (stars.size() < 1000) {
            auto st = vertex_star(OrientedEdge{Int(lab(rng)), Int(lab(rng)), Int(lab(rng))});
            if (st.r != 0 && st.s != 0 && st.t != 0 && st.e != 0 && st.f != 0 && st.g != 0)
                stars.push_back(st);
        }
        rep.inputs()["random_stars"] = stars.size();
        rep.inputs()["seed"] = g.seed;
    }

    Real trig_tol = Real::exp2i(16 - static_cast<long>(g.prec), g.prec);
    json per = json::object();
    for (auto id : {Identity::stu, Identity::reci, Identity::stu2, Identity::stu3, Identity::stu4}) {
        std::size_t nonzero = 0, skipped = 0;
        for (auto const & st : stars) {
            try {
                nonzero += check_identity(st, id) != 0;
            } catch (DivisionByZero const &) {
                ++skipped;
            }
        }
        per[identity_name(id)] = {{"nonzero", nonzero}, {"skipped", skipped}};
        rep.check(std::string(identity_name(id)) + " residual is exactly zero", nonzero == 0, nonzero, 0);
    }
    // eq_stu5 in its stated form: reported, its failure is expected
    std::size_t nonzero5 = 0;
    for (auto const & st : stars) {
        try {
            nonzero5 += check_identity(st, Identity::stu5) != 0;
        } catch (DivisionByZero const &) {
        }
    }
    per["eq_stu5"] = {{"nonzero", nonzero5}, {"note", "stated form does not hold"}};

    Real worst(0L, g.prec);
    std::size_t trig_count = 0;
    for (auto const & st : stars) {
        Int D = st.discriminant();
        if (D == 0)
            continue;
        if (D > 0 && (st.e * st.e <= D || st.f * st.f <= D || st.g * st.g <= D))
            continue;
        if (D < 0 && (st.r == 0 || st.s == 0 || st.t == 0 || st.e == 0 || st.f == 0 || st.g == 0))
            continue;
        for (auto id : {TrigIdentity::arcsin_sum, TrigIdentity::arctan_sum, TrigIdentity::arcsin_split,
                        TrigIdentity::arctan_split})
            worst = max(worst, abs(trig_residual(st, id, g.prec)));
        ++trig_count;
    }
    per["trig_stars"] = trig_count;
    rep.results()["identities"] = per;
    if (trig_count)
        rep.check("inverse-trig vertex identities", worst <= trig_tol, real_json(worst), real_json(trig_tol));
}

void cmd_sum(Report & rep, Globals const & g, SumKind kind)
{
    auto e = edge_from_flags(g);
    Int D = e.discriminant();
    rep.inputs()["root"] = edge_json(e);
    rep.inputs()["discriminant"] = D.str();
    auto admiss = is_admissible(e, D);
    rep.results()["admissible"] = {{"admissible", admiss.admissible},
                                   {"criterion", admiss.criterion == AdmissibilityCriterion::climbing
                                                     ? "climbing"
                                                     : "checked-to-depth"},
                                   {"checked_depth", admiss.checked_depth}};

    if (g.depth >= 0) {
        unsigned n = static_cast<unsigned>(g.depth);
        rep.inputs()["depth"] = n;
        Rat direct = kind == SumKind::rst ? direct_rst_partial(e, n) : direct_efg_partial(e, n);
        rep.results()["direct_partial"] = direct.str();
        if (D != 0) {
            Rat tele = kind == SumKind::rst ? telescoped_rst_partial(e, n, D) : telescoped_efg_partial(e, n, D);
            rep.results()["telescoped_partial"] = tele.str();
            rep.check("telescoped partial equals direct partial", tele == direct);
        } else {
            Rat tele = kind == SumKind::rst ? telescoped_rst_partial_flat(e, n) : telescoped_efg_partial_flat(e, n);
            rep.results()["telescoped_partial"] = tele.str();
            rep.check("telescoped partial equals direct partial", tele == direct);
        }
        return;
    }

    Real tol = tol_or(g, "1e-8");
    rep.inputs()["tol"] = real_json(tol);
    auto r = pruned_sum(e, D, tol, kind, g.prec, g.budget);
    rep.results()["sum"] = series_json(r);
    Real closed = kind == SumKind::rst ? closed_rst(e, g.prec) : closed_efg(e, g.prec);
    rep.results()["closed_form"] = real_json(closed);
    rep.close("sum agrees with the closed form", r.value, closed, tol);
    rep.check("error_bound within tol", r.error_bound <= tol, real_json(r.error_bound), real_json(tol));
}

void cmd_series(Report & rep, Globals const & g, std::string const & name, std::string const & mu,
                std::int64_t N, std::string const & D)
{
    SeriesParams p;
    if (!mu.empty()) {
        try {
            p.mu = Rat(mu);
        } catch (std::exception const &) {
            throw UsageError("--mu must be a rational like 1/2");
        }
    }
    p.N = N;
    if (!D.empty())
        p.D = Int(D);
    if (!g.form.empty()) {
        auto v = parse_triple(g.form, "--form");
        p.form = QuadraticForm{v[0], v[1], v[2]};
    }
    Real tol = tol_or(g, "1e-6");
    rep.inputs()["series"] = name;
    rep.inputs()["tol"] = real_json(tol);
    rep.inputs()["mu"] = p.mu.str();
    rep.inputs()["N"] = p.N;

    auto r = named_series(name, p, tol, g.prec);
    Real expected = expected_value(name, p, g.prec);
    rep.results()["series"] = series_json(r);
    rep.results()["expected"] = real_json(expected);
    Real limit = name == "hata" ? max(tol, r.error_bound) : tol;
    rep.close("value vs closed form", r.value, expected, limit);
    if (auto alt = named_series_alternate(name, p, tol, g.prec)) {
        rep.results()["alternate"] = series_json(*alt);
        Real alt_limit = name == "hata" ? max(tol, alt->error_bound) : tol;
        rep.close("alternate route vs closed form", alt->value, expected, alt_limit);
    }
}

void cmd_river(Report & rep, Globals const & g, std::string const & Dtext, bool edge_sum)
{
    Int D(Dtext);
    rep.inputs()["D"] = D.str();
    auto form = g.form.empty() ? principal_form(D) : [&] {
        auto v = parse_triple(g.form, "--form");
        return QuadraticForm{v[0], v[1], v[2]};
    }();
    if (form.discriminant() != D)
        throw UsageError("--form does not have discriminant D");
    auto start = find_river(form);
    auto rp = river_period(start);
    auto pell = fundamental_unit(D, g.prec);
    json labels = json::array();
    for (auto const & e : rp.off_river)
        labels.push_back(e.h.str());
    json river = json::array();
    for (auto const & e : rp.river)
        river.push_back(edge_json(e));
    rep.results()["form"] = form_json(form);
    rep.results()["river_states"] = river;
    rep.results()["off_river_labels"] = labels;
    rep.results()["period_length"] = rp.river.size();
    rep.results()["pell"] = {{"t", pell.t.str()}, {"u", pell.u.str()}, {"epsilon", real_json(pell.epsilon)},
                             {"log_epsilon", real_json(pell.log_epsilon)}};
    bool ok = true;
    for (auto const & e : rp.off_river)
        ok = ok && e.h * e.h > D;
    rep.check("off-river labels exceed sqrt(D)", ok);
    Real two_log = 2 * pell.log_epsilon;
    Real s = river_sum(rp, g.prec);
    rep.results()["river_sum"] = real_json(s);
    rep.close("river arctanh sum vs 2 log eps", s, two_log, tol_or(g, "1e-20"));
    if (edge_sum) {
        Real tol = tol_or(g, "1e-8");
        auto r = osullivan_edge_sum(D, tol, g.prec);
        rep.results()["edge_sum"] = series_json(r);
        rep.close("river edge sum vs 2 log eps", r.value, two_log, 2 * tol);
    }
}

void cmd_class_number(Report & rep, Globals const & g, std::string const & Dtext)
{
    Int D(Dtext);
    rep.inputs()["D"] = D.str();
    auto rf = reduced_forms(D);
    json forms = json::array();
    for (auto const & f : rf.forms)
        forms.push_back(form_json(f));
    rep.results()["reduced_forms"] = forms;
    rep.results()["h"] = rf.class_number();
    rep.results()["omega"] = rf.omega;
    rep.results()["fundamental"] = is_fundamental(D);

    Real split_tol = Real::exp2i(32 - static_cast<long>(g.prec), g.prec);
    for (auto const & f : rf.forms) {
        Int Df = D;
        unsigned wp = g.prec + 16;
        auto root = root_edge(f);
        Real aD = abs(Real(Df, wp));
        Real v = aD * sqrt(aD) * (closed_rst(root, wp) + closed_rst(root.reversed(), wp));
        std::ostringstream name;
        name << "whole topograph of " << f << " sums to 4pi";
        rep.close(name.str(), v.with_precision(g.prec), 4 * Real::pi(g.prec), split_tol);
    }
    if (is_fundamental(D)) {
        Real tol = tol_or(g, "1e-3");
        auto h = hurwitz_check(D, tol, g.prec);
        rep.results()["hurwitz"] = {{"series_value", real_json(h.series_value)},
                                    {"direct_value", real_json(h.direct_value)},
                                    {"direct_tail", real_json(h.direct_tail)},
                                    {"direct_tail_kind", "empirical"},
                                    {"direct_cutoff", h.direct_cutoff}};
        Real hr(long(h.h), g.prec);
        rep.close("class decomposition vs h", h.series_value, hr, tol);
        rep.close("direct enumeration vs h", h.direct_value, hr, tol);
    }
}

void cmd_square(Report & rep, Globals const & g, std::int64_t m)
{
    if (m < 2)
        throw UsageError("square-d needs m >= 2");
    rep.inputs()["m"] = m;
    json rivers = json::array();
    Real finite_tol = Real::exp2i(32 - static_cast<long>(g.prec), g.prec);
    for (std::int64_t r = 1; r < m; ++r) {
        if (std::gcd(r, m) != 1)
            continue;
        auto sr = square_river(m, r, std::nullopt, g.prec);
        json labels = json::array();
        for (auto const & l : sr.labels)
            labels.push_back(l.str());
        rivers.push_back({{"r", r}, {"s", sr.s}, {"labels", labels}, {"sum", real_json(sr.value)}});
        rep.close("river r=" + std::to_string(r) + " vs 1/2 log(r(m-r)s(m-s))", sr.value,
                  square_river_expected(m, r, sr.s, g.prec), finite_tol);
    }
    rep.results()["rivers"] = rivers;
    Real tol = tol_or(g, "1e-5");
    auto sc = square_class_identity(m, tol, z_reduced, g.prec);
    json red = json::array();
    for (auto const & f : sc.reduced_forms)
        red.push_back(form_json(f));
    rep.results()["class_identity"] = {{"lhs", real_json(sc.lhs)},
                                       {"rhs", real_json(sc.rhs)},
                                       {"triple_sum", real_json(sc.triple_sum)},
                                       {"reduced_sum", real_json(sc.reduced_sum)},
                                       {"reduced_forms", red},
                                       {"tail", real_json(sc.tail)},
                                       {"tail_kind", bound_name(sc.bound)},
                                       {"cutoff", sc.cutoff}};
    rep.close("class identity lhs vs rhs", sc.lhs, sc.rhs, tol);
}

void cmd_export(Report & rep, Globals const & g)
{
    auto e = edge_from_flags(g);
    if (g.depth < 0)
        throw UsageError("export needs --depth");
    unsigned n = static_cast<unsigned>(g.depth);
    check_depth_budget(n, g.budget);
    rep.inputs()["root"] = edge_json(e);
    rep.inputs()["depth"] = n;
    rep.results()["topograph"] = json::parse(export_json(e, n));
    if (!g.dot_path.empty()) {
        std::ofstream out(g.dot_path);
        if (!out)
            throw UsageError("cannot write " + g.dot_path);
        out << export_dot(e, n);
        rep.results()["dot_file"] = g.dot_path;
    }
}

void cmd_verify(Report & rep, Globals const & g, std::vector<int> const & only)
{
    verify::Options opt;
    opt.prec = g.prec;
    opt.seed = g.seed;
    json list = json::array();
    verify::run_all(opt, only, [&](verify::CriterionResult const & r) {
        std::cerr << verify::format(r) << std::flush;
        json checks = json::array();
        for (auto const & c : r.checks)
            checks.push_back({{"what", c.what}, {"pass", c.pass}, {"measured", c.measured}, {"limit", c.limit}});
        json item{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks", checks}};
        if (!r.error.empty())
            item["error"] = r.error;
        list.push_back(std::move(item));
        rep.check("criterion " + std::to_string(r.id), r.pass);
    });
    rep.results()["criteria"] = list;
}

} // namespace

int main(int argc, char ** argv)
{
    auto t0 = std::chrono::steady_clock::now();
    Globals g;
    CLI::App app{"Topograph sums, closed forms and class-number identities"};
    app.require_subcommand(1);
    app.add_option("--prec", g.prec, "working precision in bits")->check(CLI::Range(32u, 8192u));
    app.add_option("--seed", g.seed, "seed for random samples");
    app.add_option("--json", g.json_path, "write the report here instead of stdout");
    app.add_option("--dot", g.dot_path, "DOT output (export)");
    app.add_option("--budget", g.budget, "node budget")->check(CLI::PositiveNumber);
    app.add_option("--form", g.form, "form a,b,c");
    app.add_option("--root", g.root, "root edge p,h,q");
    app.add_option("--depth", g.depth, "truncation depth")->check(CLI::NonNegativeNumber);
    app.add_option("--tol", g.tol, "tolerance");
    app.fallthrough();

    auto * identities = app.add_subcommand("identities", "vertex identities on a star or random stars");
    auto * sum_rst_cmd = app.add_subcommand("sum-rst", "sum of 1/(rst) over a half topograph");
    auto * sum_efg_cmd = app.add_subcommand("sum-efg", "sum of 1/(efg) over a half topograph");

    std::string series_name, mu, series_D;
    std::int64_t series_N = 10000;
    auto * series = app.add_subcommand("series", "evaluate a named series");
    std::string ids_help = "series id:";
    for (auto const & id : series_ids())
        ids_help += " " + id;
    series->add_option("name", series_name, ids_help)->required();
    series->add_option("--mu", mu, "mu for the mu families (rational)");
    series->add_option("--N", series_N, "number of subtrees (hata)")->check(CLI::PositiveNumber);
    series->add_option("--D", series_D, "discriminant (full_topograph_neg)");

    std::string river_D;
    bool edge_sum = false;
    auto * river = app.add_subcommand("river", "river, period, unit and river sums for D > 0");
    river->add_option("D", river_D, "non-square discriminant")->required();
    river->add_flag("--edge-sum", edge_sum, "also evaluate the full edge sum");

    std::string class_D;
    auto * classnum = app.add_subcommand("class-number", "reduced forms and the Hurwitz series for D < 0");
    classnum->add_option("D", class_D, "negative discriminant")->required();

    std::int64_t square_m = 0;
    auto * square = app.add_subcommand("square-d", "square discriminant m^2: lake-to-lake rivers and class identity");
    square->add_option("m", square_m, "m > 1")->required();

    auto * exp = app.add_subcommand("export", "export a truncated half topograph (JSON in the report, --dot)");

    std::vector<int> only;
    auto * verify_all = app.add_subcommand("verify-all", "run the acceptance suite");
    verify_all->add_option("--only", only, "criterion ids")->delimiter(',');

    for (auto * sc : app.get_subcommands({}))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command;
    for (int i = 0; i < argc; ++i)
        command += (i ? " " : "") + std::string(argv[i]);

    PrecisionGuard guard(g.prec);
    set_node_budget(g.budget);
    Report rep(command, g);
    try {
        if (*identities)
            cmd_identities(rep, g);
        else if (*sum_rst_cmd)
            cmd_sum(rep, g, SumKind::rst);
        else if (*sum_efg_cmd)
            cmd_sum(rep, g, SumKind::efg);
        else if (*series)
            cmd_series(rep, g, series_name, mu, series_N, series_D);
        else if (*river)
            cmd_river(rep, g, river_D, edge_sum);
        else if (*classnum)
            cmd_class_number(rep, g, class_D);
        else if (*square)
            cmd_square(rep, g, square_m);
        else if (*exp)
            cmd_export(rep, g);
        else if (*verify_all)
            cmd_verify(rep, g, only);
    } catch (UsageError const & e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (InvalidInput const & e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (UnknownSeries const & e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (NotIndefinite const & e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (std::exception const & e) {
        rep.fail_with(e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        return rep.finish(secs);
    } catch (UsageError const & e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}
