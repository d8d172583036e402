#pragma once

// The acceptance suite: one check per criterion, shared by the CLI's
// verify-all and the acceptance test binary. Each check reports what it
// measured; none of them relax a tolerance to make a result pass.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "topo/bqf.hpp"
#include "topo/classnumber.hpp"
#include "topo/closed_forms.hpp"
#include "topo/indefinite.hpp"
#include "topo/numeric.hpp"
#include "topo/series.hpp"
#include "topo/special_functions.hpp"
#include "topo/topograph.hpp"

namespace topo::verify {

struct Check
{
    std::string what;
    bool pass = false;
    std::string measured;   // deviation or other observed quantity
    std::string limit;      // the tolerance it is held to
};

struct CriterionResult
{
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<Check> checks;
    std::string error;      // set when the check itself threw
    double seconds = 0;
};

struct Options
{
    unsigned prec = 128;
    std::uint64_t seed = 20240601;
};

namespace detail {

inline std::string sci(Real const & x, int digits = 3) { return x.to_string(digits); }

inline std::string sci(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

class Recorder
{
public:
    explicit Recorder(CriterionResult & r) : r_(r) {}

    /// |value - target| < tol
    bool close(std::string what, Real const & value, Real const & target, double tol)
    {
        Real dev = abs(value - target);
        bool ok = dev < Real(tol, value.precision());
        r_.checks.push_back({std::move(what), ok, sci(dev), sci(tol)});
        return ok;
    }

    bool below(std::string what, Real const & value, double tol)
    {
        bool ok = value < Real(tol, value.precision());
        r_.checks.push_back({std::move(what), ok, sci(value), sci(tol)});
        return ok;
    }

    bool truth(std::string what, bool ok, std::string measured, std::string limit = "")
    {
        r_.checks.push_back({std::move(what), ok, std::move(measured), std::move(limit)});
        return ok;
    }

private:
    CriterionResult & r_;
};

inline bool non_zero_labels(VertexStar const & s)
{
    return s.r != 0 && s.s != 0 && s.t != 0 && s.e != 0 && s.f != 0 && s.g != 0;
}

} // namespace detail

// 1 --------------------------------------------------------------------------
inline void exact_telescoping(detail::Recorder & rec, Options const & o)
{
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> pq(1, 12), hh(1, 30);
    int neg = 0, pos = 0, bad_rst = 0, bad_efg = 0, tried = 0;
    while (neg < 60 || pos < 60) {
        OrientedEdge e{Int(pq(rng)), Int(hh(rng)), Int(pq(rng))};
        Int D = e.discriminant();
        if (D == 0 || abs(D) > 500)
            continue;
        if ((D < 0 && neg >= 60) || (D > 0 && pos >= 60))
            continue;
        (D < 0 ? neg : pos)++;
        unsigned n = 1 + static_cast<unsigned>(tried % 12);
        ++tried;
        if (telescoped_rst_partial(e, n, D) != direct_rst_partial(e, n))
            ++bad_rst;
        if (telescoped_efg_partial(e, n, D) != direct_efg_partial(e, n))
            ++bad_efg;
    }
    std::string tally = std::to_string(neg) + " roots D<0, " + std::to_string(pos) + " roots D>0, depths 1..12";
    rec.truth("rst: telescoped == direct (exact)", bad_rst == 0, std::to_string(bad_rst) + " mismatches; " + tally, "0");
    rec.truth("efg: telescoped == direct (exact)", bad_efg == 0, std::to_string(bad_efg) + " mismatches", "0");
}

// 2 --------------------------------------------------------------------------
inline void hurwitz_quarter(detail::Recorder & rec, Options const & o)
{
    Real target = Real::pi(o.prec) / Real(4L, o.prec);
    auto r = sum_rst(OrientedEdge{1, 0, 1}, Int(-4), Real(1e-8, o.prec), o.prec);
    rec.close("pruned sum vs pi/4", r.value, target, 1e-8);
    rec.below("pruned error_bound", r.error_bound, 1e-8);
    Real t20 = telescoped_rst_partial_real(OrientedEdge{1, 0, 1}, 20, Int(-4), o.prec);
    rec.close("depth-20 telescoped partial vs pi/4", t20, target, 1e-5);
}

// 3 --------------------------------------------------------------------------
inline void whole_topograph(detail::Recorder & rec, Options const & o)
{
    for (QuadraticForm f : {QuadraticForm{1, 1, 1}, QuadraticForm{1, 0, 1}, QuadraticForm{1, 1, 2},
                            QuadraticForm{1, 0, 2}}) {
        auto r = theorem13_check(f, Real(1e-4, o.prec), o.prec);
        std::ostringstream name;
        name << "D=" << f.discriminant() << " split route";
        rec.below(name.str(), r.split_deviation, 1e-25);
    }
}

// 4 --------------------------------------------------------------------------
inline void hurwitz_class_numbers(detail::Recorder & rec, Options const & o)
{
    long const Ds[] = {-3, -4, -7, -8, -11, -15, -20, -23};
    std::size_t const hs[] = {1, 1, 1, 1, 1, 2, 2, 3};
    for (int i = 0; i < 8; ++i) {
        auto r = hurwitz_check(Int(Ds[i]), Real(1e-3, o.prec), o.prec);
        std::string tag = "D=" + std::to_string(Ds[i]);
        rec.truth(tag + " h from reduced forms", r.h == hs[i], std::to_string(r.h), std::to_string(hs[i]));
        Real h(long(r.h), o.prec);
        rec.close(tag + " direct route", r.direct_value, h, 1e-3);
        rec.close(tag + " class decomposition", r.series_value, h, 1e-3);
    }
}

// 5 --------------------------------------------------------------------------
inline void mordell_tornheim(detail::Recorder & rec, Options const & o)
{
    auto r = named_series("mordell_tornheim", {}, Real(1e-6, o.prec), o.prec);
    rec.close("flat enumeration vs 1/3", r.value, Real(1L, o.prec) / Real(3L, o.prec), 1e-6);
    rec.truth("tail bound is rigorous", r.bound == BoundKind::rigorous, bound_name(r.bound), "rigorous");
    rec.below("rigorous error_bound", r.error_bound, 1e-6);
}

// 6 --------------------------------------------------------------------------
inline void mu_family(detail::Recorder & rec, Options const & o)
{
    SeriesParams p;
    Real tol(1e-7, o.prec);
    auto check_both = [&](std::string const & id, double limit, Real const & t) {
        Real target = expected_value(id, p, o.prec);
        auto a = named_series(id, p, t, o.prec);
        rec.close(id + " (" + method_name(a.method) + ")", a.value, target, limit);
        if (auto b = named_series_alternate(id, p, t, o.prec))
            rec.close(id + " (" + method_name(b->method) + ")", b->value, target, limit);
    };
    check_both("mu_family", 1e-6, tol);
    check_both("mu_i_half", 1e-6, tol);
    check_both("tangent_mu_i_half", 1e-6, tol);
    check_both("mu2_coefficient", 1e-3, Real(1e-4, o.prec));
    check_both("tangent_mu2_coefficient", 1e-3, Real(1e-4, o.prec));
}

// 7 --------------------------------------------------------------------------
inline void duality(detail::Recorder & rec, Options const & o)
{
    SeriesParams p;
    Real target = expected_value("tangent_quarter", p, o.prec);
    auto a = named_series("tangent_quarter", p, Real(1e-6, o.prec), o.prec);
    rec.close("edge sum over (1,2,2), 8x", a.value, target, 1e-5);
    auto b = named_series_alternate("tangent_quarter", p, Real(1e-6, o.prec), o.prec);
    rec.close("flat tangent enumeration", b->value, target, 1e-5);
}

// 8 --------------------------------------------------------------------------
inline void hata(detail::Recorder & rec, Options const & o)
{
    SeriesParams p;
    p.N = 10000;
    Real target = expected_value("hata", p, o.prec);
    auto a = named_series("hata", p, Real(1e-7, o.prec), o.prec);
    rec.close("N=10^4 subtree closed forms vs 2gamma-1", a.value, target, 1e-7);
    auto b = named_series_alternate("hata", p, Real(1e-7, o.prec), o.prec);
    rec.close("harmonic-log partial agrees", b->value, a.value, 1e-25);

    Real t2 = expected_value("hata_second", p, o.prec);
    auto c = named_series("hata_second", p, Real(1e-4, o.prec), o.prec);
    rec.close(std::string("second series vs 7-12gamma [") + bound_name(c.bound) + " tail]", c.value, t2, 1e-3);
    auto d = named_series_alternate("hata_second", p, Real(1e-4, o.prec), o.prec);
    rec.close("second series, telescoped route", d->value, t2, 1e-3);
}

// 9 --------------------------------------------------------------------------
inline void river_corollary(detail::Recorder & rec, Options const & o)
{
    for (long D : {5, 8, 12, 13, 24, 40}) {
        auto pell = fundamental_unit(Int(D), o.prec);
        Real v = corollary_river_sum(Int(D), o.prec);
        rec.close("D=" + std::to_string(D), v, 2 * pell.log_epsilon, 1e-20);
    }
}

// 10 -------------------------------------------------------------------------
inline void river_edge_sum(detail::Recorder & rec, Options const & o)
{
    for (long D : {5, 8, 13}) {
        auto pell = fundamental_unit(Int(D), o.prec);
        auto r = osullivan_edge_sum(Int(D), Real(1e-8, o.prec), o.prec);
        rec.close("D=" + std::to_string(D), r.value, 2 * pell.log_epsilon, 2e-8);
    }
}

// 11 -------------------------------------------------------------------------
inline void square_rivers(detail::Recorder & rec, Options const & o)
{
    Real half_log4 = log(Real(4L, o.prec)) / Real(2L, o.prec);
    rec.close("m=3 r=1 s=2 vs 1/2 log 4", square_river_sum(3, 1, 2, o.prec), half_log4, 1e-25);
    for (std::int64_t m : {4, 5, 6})
        for (std::int64_t r = 1; r < m; ++r) {
            if (std::gcd(m, r) != 1)
                continue;
            auto sr = square_river(m, r, std::nullopt, o.prec);
            rec.close("m=" + std::to_string(m) + " r=" + std::to_string(r) + " s=" + std::to_string(sr.s), sr.value,
                      square_river_expected(m, r, sr.s, o.prec), 1e-25);
        }
}

// 12 -------------------------------------------------------------------------
inline void digamma_w1(detail::Recorder & rec, Options const & o)
{
    unsigned pr = o.prec;
    Real half = Real(1L, pr) / Real(2L, pr);
    Real three_half = Real(3L, pr) / Real(2L, pr);
    for (auto [n, d] : {std::pair{1L, 3L}, {1L, 4L}, {2L, 5L}}) {
        Real x = Real(n, pr) / Real(d, pr);
        Real res = 2 * w1(x) + log(Real(4L, pr)) + digamma(half + x) + digamma(three_half - x);
        rec.below("main identity at x=" + std::to_string(n) + "/" + std::to_string(d), abs(res), 1e-12);
    }
    for (std::int64_t m : {3, 4, 5, 6}) {
        Real s(0L, pr);
        for (std::int64_t r = 1; r < m; ++r)
            if (std::gcd(r, m) == 1)
                s += w1(Real(long(r), pr) / Real(long(m), pr));
        rec.close("W1 sum m=" + std::to_string(m), s, w1_sum_closed(m, pr), 1e-10);
    }
    auto sc = square_class_identity(3, Real(1e-5, pr), z_reduced, pr);
    rec.close("m=3 right-hand side", sc.rhs, Real::from_string("0.9743676592890432", pr), 1e-14);
    rec.close("m=3 lhs vs rhs [empirical triple-sum tail, B=" + std::to_string(sc.cutoff) + "]", sc.lhs, sc.rhs,
              1e-5);
}

// 13 -------------------------------------------------------------------------
inline void identity_suite(detail::Recorder & rec, Options const & o)
{
    std::mt19937_64 rng(o.seed + 13);
    std::uniform_int_distribution<int> lab(-40, 40);
    Identity const exact[] = {Identity::stu, Identity::reci, Identity::stu2, Identity::stu3, Identity::stu4};
    int stars = 0, bad = 0;
    while (stars < 1000) {
        auto st = vertex_star(OrientedEdge{Int(lab(rng)), Int(lab(rng)), Int(lab(rng))});
        if (!detail::non_zero_labels(st))
            continue;
        ++stars;
        for (auto id : exact)
            if (check_identity(st, id) != 0)
                ++bad;
    }
    rec.truth("eq_stu..eq_stu4 exact on 1000 stars", bad == 0, std::to_string(bad) + " non-zero residuals", "0");

    std::uniform_int_distribution<int> pos(1, 40), hd(-60, 60), hp(1, 80);
    Real worst_neg(0L, o.prec), worst_pos(0L, o.prec);
    int neg = 0, posn = 0;
    while (neg < 200) {
        OrientedEdge e{Int(pos(rng)), Int(hd(rng)), Int(pos(rng))};
        auto st = vertex_star(e);
        if (st.discriminant() >= 0 || !detail::non_zero_labels(st))
            continue;
        ++neg;
        for (auto id : {TrigIdentity::arcsin_sum, TrigIdentity::arctan_sum, TrigIdentity::arcsin_split,
                        TrigIdentity::arctan_split})
            worst_neg = max(worst_neg, abs(trig_residual(st, id, o.prec)));
    }
    while (posn < 200) {
        OrientedEdge e{Int(pos(rng)), Int(hp(rng)), Int(pos(rng))};
        auto st = vertex_star(e);
        Int D = st.discriminant();
        if (D <= 0 || st.e * st.e <= D || st.f * st.f <= D || st.g * st.g <= D)
            continue;
        ++posn;
        for (auto id : {TrigIdentity::arcsin_sum, TrigIdentity::arctan_sum, TrigIdentity::arcsin_split,
                        TrigIdentity::arctan_split})
            worst_pos = max(worst_pos, abs(trig_residual(st, id, o.prec)));
    }
    rec.below("arcsin/arctan identities, 200 stars D<0 (worst)", worst_neg, 1e-30);
    rec.below("arcsinh/arctanh identities, 200 stars D>0 (worst)", worst_pos, 1e-30);

    auto witness = star_from_regions(Int(1), Int(2), Int(5));
    Rat r5 = check_identity(witness, Identity::stu5);
    rec.truth("eq_stu5 in stated form fails on witness star", r5 != 0, "residual " + r5.str(), "non-zero");
}

// 14 -------------------------------------------------------------------------
inline void flat_discriminant(detail::Recorder & rec, Options const & o)
{
    Real third = Real(1L, o.prec) / Real(3L, o.prec);
    OrientedEdge root{1, 2, 1};
    rec.close("closed_rst((1,2,1)) vs 1/3", closed_rst(root, o.prec), third, 1e-30);
    Rat delta(1, 100);
    unsigned depth = 0;
    Rat part = telescoped_rst_partial_flat_refined(root, delta, &depth);
    rec.close("telescoped partial, crown ratio <= 1/100 (depth " + std::to_string(depth) + ")", Real(part, o.prec),
              third, 1e-5);
    for (long h0 : {1, 2, 3}) {
        RatEdge e{Rat(h0, 2), Rat(h0), Rat(h0, 2)};
        Real closed = closed_efg(Rat(0), Rat(h0), o.prec);
        Real target = Real(1L, o.prec) / (Real(3L, o.prec) * pow(Real(h0, o.prec), 3));
        rec.close("closed_efg(0," + std::to_string(h0) + ") vs 1/(3h0^3)", closed, target, 1e-30);
        Rat pe = telescoped_efg_partial_flat_refined(e, Rat(1, 200), &depth);
        rec.close("telescoped edge partial h0=" + std::to_string(h0) + ", 1/h <= 1/200 (depth " + std::to_string(depth) + ")",
                  Real(pe, o.prec), target, 1e-5);
    }
}

struct Criterion
{
    int id;
    char const * title;
    void (*run)(detail::Recorder &, Options const &);
};

inline std::vector<Criterion> const & criteria()
{
    static std::vector<Criterion> const all{
        {1, "exact telescoping on random climbing roots", exact_telescoping},
        {2, "sum of 1/(rst) over (1,0,1) is pi/4", hurwitz_quarter},
        {3, "whole definite topograph sums to 4pi/|D|^{3/2}", whole_topograph},
        {4, "Hurwitz series gives h(D)", hurwitz_class_numbers},
        {5, "Mordell-Tornheim sum is 1/3", mordell_tornheim},
        {6, "mu-family evaluations", mu_family},
        {7, "tangent-triangle duality 1 - pi/4", duality},
        {8, "Farey-pair series (2gamma-1, 7-12gamma)", hata},
        {9, "river arctanh sum is 2 log eps_D", river_corollary},
        {10, "river edge sum is 2 log eps_D", river_edge_sum},
        {11, "square-discriminant river sums", square_rivers},
        {12, "digamma, W1 and the square class identity", digamma_w1},
        {13, "vertex identity suite", identity_suite},
        {14, "D = 0 closed forms and partials", flat_discriminant},
    };
    return all;
}

inline CriterionResult run_one(Criterion const & c, Options const & o)
{
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    PrecisionGuard guard(o.prec);
    auto t0 = std::chrono::steady_clock::now();
    detail::Recorder rec(r);
    try {
        c.run(rec, o);
        r.pass = !r.checks.empty();
        for (auto const & ch : r.checks)
            r.pass = r.pass && ch.pass;
    } catch (std::exception const & ex) {
        r.error = ex.what();
        r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Runs the selected criteria (all when `only` is empty), in order.
inline std::vector<CriterionResult> run_all(Options const & o, std::vector<int> const & only = {},
                                            std::function<void(CriterionResult const &)> on_done = {})
{
    std::vector<CriterionResult> out;
    for (auto const & c : criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        out.push_back(run_one(c, o));
        if (on_done)
            on_done(out.back());
    }
    return out;
}

/// "[PASS] 3  title  (1.2s)" followed by one indented line per check.
inline std::string format(CriterionResult const & r)
{
    std::ostringstream os;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.title << "  (";
    os.precision(2);
    os << std::fixed << r.seconds << "s)\n";
    for (auto const & ch : r.checks)
        os << "         " << (ch.pass ? "ok   " : "FAIL ") << ch.what << ": " << ch.measured
           << (ch.limit.empty() ? "" : " (limit " + ch.limit + ")") << "\n";
    if (!r.error.empty())
        os << "         error: " << r.error << "\n";
    return os.str();
}

} // namespace topo::verify
