#pragma once

// Evaluation of half-topograph sums to a tolerance, flat enumerations over
// unimodular pairs, and the catalog of named series.
//
// Pruned traversal: a crown edge whose whole subtree is worth less than its
// share of the tolerance is not expanded; its subtree is added in closed
// form instead. The share is proportional to the edge's additive angle, so
// the closed-off mass is at most about tol/2 overall. error_bound reports
// that closed-off mass (what a plain truncation would have missed) plus
// rounding.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "topo/arith.hpp"
#include "topo/bqf.hpp"
#include "topo/closed_forms.hpp"
#include "topo/errors.hpp"
#include "topo/numeric.hpp"
#include "topo/topograph.hpp"

namespace topo {

enum class Method { direct, telescoped, subtree_closed_form };
enum class BoundKind { rigorous, estimated, empirical };

inline char const * method_name(Method m)
{
    switch (m) {
    case Method::direct: return "direct";
    case Method::telescoped: return "telescoped";
    case Method::subtree_closed_form: return "subtree-closed-form";
    }
    return "?";
}

inline char const * bound_name(BoundKind b)
{
    switch (b) {
    case BoundKind::rigorous: return "rigorous";
    case BoundKind::estimated: return "estimated";
    case BoundKind::empirical: return "empirical";
    }
    return "?";
}

struct SeriesResult
{
    Real value;
    Real error_bound;
    BoundKind bound = BoundKind::estimated;
    std::uint64_t terms = 0;
    unsigned depth = 0;
    Method method = Method::direct;
    std::string note;
};

enum class SumKind { rst, efg };

namespace detail {

using ld = long double;

inline ld ld_of(Int const & v) { return static_cast<ld>(to_double(v)); }

/// closed_rst / leading term x^3/24, bounded above, for an edge with
/// z = h sqrt|D|/(2pq) (D < 0 needs the principal branch, z <= 1).
inline ld rst_ratio(int dsign, ld z)
{
    if (dsign >= 0)
        return 1; // the hyperbolic remainder is below its leading term
    return 1 + 2.5L * z * z;
}

/// closed_efg / leading term 1/(3h^3), with w = sqrt|D|/h.
inline ld efg_ratio(int dsign, ld w)
{
    if (dsign <= 0)
        return 1;
    if (w < 1e-3L)
        return 1 + 0.6L * w * w + 0.5L * w * w * w * w;
    return 3 * (std::atanh(w) - w) / (w * w * w);
}

struct PruneGeometry
{
    SumKind kind;
    int dsign;
    ld k; // sqrt|D|

    /// Additive angle of an edge (w in the threshold share).
    ld weight(ld p, ld h, ld q) const
    {
        if (kind == SumKind::rst) {
            if (dsign < 0)
                return 2 * std::atan2(k, h);
            ld x = h / (p * q);
            return dsign == 0 ? x : std::asinh(x * k / 2);
        }
        if (dsign < 0)
            return std::atan2(k, h);
        return dsign == 0 ? 1 / h : std::atanh(k / h);
    }

    /// Upper estimate of the subtree's closed value; infinity when the
    /// subtree cannot be closed (not climbing, or a wide definite angle).
    ld closable_estimate(ld p, ld h, ld q) const
    {
        constexpr ld inf = std::numeric_limits<ld>::infinity();
        if (!(p > 0 && q > 0 && h > 0))
            return inf;
        if (kind == SumKind::rst) {
            if (dsign < 0 && h * h - 2 * p * q < 0)
                return inf;
            ld x = h / (p * q);
            return 1.2L * x * x * x / 24 * rst_ratio(dsign, x * k / 2);
        }
        if (dsign > 0 && h <= k)
            return inf;
        return 1.2L / (3 * h * h * h) * efg_ratio(dsign, k / h);
    }
};

struct StackEntry
{
    OrientedEdge edge;
    unsigned depth;
};

} // namespace detail

/// Pruned evaluation over the half topograph above an integer root.
inline SeriesResult pruned_sum(OrientedEdge root, Int const & D, Real const & tol, SumKind kind,
                               unsigned prec = default_precision(), std::uint64_t budget = node_budget())
{
    using detail::ld;
    if (root.discriminant() != D)
        throw InvalidInput("root does not have the stated discriminant");
    if (tol.sign() <= 0)
        throw InvalidInput("tolerance must be positive");
    root = detail::positive_side(root);
    int dsign = sign(D);

    if (kind == SumKind::efg && root.h <= 0)
        throw InvalidInput("edge sums need h0 > 0");
    if (dsign >= 0 && !is_climbing(root)) {
        auto rep = is_admissible(root, D);
        if (!rep.admissible)
            throw InvalidInput("root is not admissible");
        throw InvalidInput("pruned evaluation needs a climbing root for D >= 0");
    }

    unsigned wp = prec + 16;
    detail::PruneGeometry geo{kind, dsign, std::sqrt(std::fabs(static_cast<ld>(to_double(D))))};
    ld w_root = geo.weight(detail::ld_of(root.p), detail::ld_of(root.h), detail::ld_of(root.q));
    if (!(w_root > 0))
        throw InvalidInput("root has no positive angle");
    ld share = 0.5L * static_cast<ld>(tol.to_double()) / w_root;

    Real partial(0L, wp), closed(0L, wp), closed_abs(0L, wp), magnitude(0L, wp);
    Real Dr(D, wp);
    Real k = sqrt(abs(Dr));
    std::uint64_t expanded = 0, closures = 0;
    unsigned max_depth = 0;

    std::vector<detail::StackEntry> stack;
    stack.push_back({root, 0});
    while (!stack.empty()) {
        auto [e, depth] = std::move(stack.back());
        stack.pop_back();
        max_depth = std::max(max_depth, depth);

        ld p = detail::ld_of(e.p), h = detail::ld_of(e.h), q = detail::ld_of(e.q);
        ld est = geo.closable_estimate(p, h, q);
        if (est <= share * geo.weight(p, h, q)) {
            Real c = kind == SumKind::rst ? closed_rst(e, wp) : closed_efg(D, e.h, wp);
            closed += c;
            closed_abs += abs(c);
            if (dsign != 0) {
                Real ratio = kind == SumKind::rst
                                 ? Real(e.h, wp) / (Real(e.p, wp) * Real(e.q, wp))
                                 : Real(1L, wp) / Real(e.h, wp);
                magnitude += (abs(ratio) + Real(4L, wp) / k) / abs(Dr);
            }
            ++closures;
            continue;
        }

        if (++expanded > budget)
            throw NonConvergence("node budget exhausted before reaching tolerance");
        auto st = vertex_star(e);
        Int den = kind == SumKind::rst ? Int(st.r * st.s * st.t) : Int(e.h * st.f * st.g);
        if (den == 0)
            throw InvalidInput("vertex with a zero label: root is not admissible");
        Real term = Real(1L, wp) / Real(den, wp);
        partial += term;
        magnitude += abs(term);
        stack.push_back({e.right_child(), depth + 1});
        stack.push_back({e.left_child(), depth + 1});
    }

    SeriesResult out;
    out.value = (partial + closed).with_precision(prec);
    Real rounding = magnitude * Real::exp2i(8 - static_cast<long>(wp), wp) *
                    Real(static_cast<long>(std::max<std::uint64_t>(1, closures + expanded)), wp);
    out.error_bound = (closed_abs + rounding).with_precision(prec);
    out.bound = BoundKind::estimated;
    out.terms = expanded;
    out.depth = max_depth;
    out.method = Method::subtree_closed_form;
    out.note = std::to_string(closures) + " subtrees closed";
    return out;
}

namespace detail {
inline Int common_denominator(RatEdge const & e)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::lcm;
    return lcm(lcm(denominator(e.p), denominator(e.h)), denominator(e.q));
}
} // namespace detail

/// Rational roots: rescale to integers (labels * L, D * L^2; sums * L^3).
inline SeriesResult pruned_sum(RatEdge const & root, Rat const & D, Real const & tol, SumKind kind,
                               unsigned prec = default_precision(), std::uint64_t budget = node_budget())
{
    using boost::multiprecision::numerator;
    if (root.discriminant() != D)
        throw InvalidInput("root does not have the stated discriminant");
    Int L = detail::common_denominator(root);
    auto scale = [&](Rat const & v) { return numerator(Rat(v * L)); };
    OrientedEdge iroot{scale(root.p), scale(root.h), scale(root.q)};
    Int iD = iroot.discriminant();
    Real L3 = pow(Real(L, prec + 16), 3);
    auto r = pruned_sum(iroot, iD, tol / L3, kind, prec, budget);
    r.value = (r.value * L3).with_precision(prec);
    r.error_bound = (r.error_bound * L3).with_precision(prec);
    return r;
}

template <class T>
SeriesResult sum_rst(BasicEdge<T> const & root, T const & D, Real const & tol,
                     unsigned prec = default_precision())
{
    return pruned_sum(root, D, tol, SumKind::rst, prec);
}

template <class T>
SeriesResult sum_efg(BasicEdge<T> const & root, T const & D, Real const & tol,
                     unsigned prec = default_precision())
{
    return pruned_sum(root, D, tol, SumKind::efg, prec);
}

// ---------------------------------------------------------------------------
// Flat enumerations: pairs of columns (a,b), (c,d) with ad - bc = 1,
// a >= b >= 0, c >= d >= 0, indexed by the coprime pair (a, c).

enum class FlatSeries {
    mordell_tornheim,
    mu_family,
    mu_i_half,
    mu2_coefficient,
    tangent_mu_family,
    tangent_mu_i_half,
    tangent_mu2_coefficient,
};

inline char const * flat_series_name(FlatSeries s)
{
    switch (s) {
    case FlatSeries::mordell_tornheim: return "mordell_tornheim";
    case FlatSeries::mu_family: return "mu_family";
    case FlatSeries::mu_i_half: return "mu_i_half";
    case FlatSeries::mu2_coefficient: return "mu2_coefficient";
    case FlatSeries::tangent_mu_family: return "tangent_mu_family";
    case FlatSeries::tangent_mu_i_half: return "tangent_mu_i_half";
    case FlatSeries::tangent_mu2_coefficient: return "tangent_mu2_coefficient";
    }
    return "?";
}

/// The (b, d) completing a coprime (a, c) to ad - bc = 1 with 0 <= b <= a,
/// 0 <= d <= c.
inline std::pair<std::int64_t, std::int64_t> unimodular_completion(std::int64_t a, std::int64_t c)
{
    if (c == 1)
        return {a - 1, 1};
    // d = a^{-1} mod c
    std::int64_t r0 = c, r1 = a % c, t0 = 0, t1 = 1;
    while (r1) {
        std::int64_t qt = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
    }
    if (r0 != 1)
        throw InvalidInput("unimodular_completion: gcd(a, c) != 1");
    std::int64_t d = ((t0 % c) + c) % c;
    return {(a * d - 1) / c, d};
}

namespace detail {
inline ld flat_term(FlatSeries s, ld mu2, ld a, ld b, ld c, ld d)
{
    ld A = a + c, B = b + d;
    ld mt = 1 / (a * a * c * c * A * A);
    switch (s) {
    case FlatSeries::mordell_tornheim:
        return mt;
    case FlatSeries::mu_family:
        return 1 / ((a * a + mu2 * b * b) * (c * c + mu2 * d * d) * (A * A + mu2 * B * B));
    case FlatSeries::mu_i_half:
        return 1 / ((4 * a * a - b * b) * (4 * c * c - d * d) * (4 * A * A - B * B));
    case FlatSeries::mu2_coefficient:
        return mt * (b * b / (a * a) + d * d / (c * c) + B * B / (A * A));
    case FlatSeries::tangent_mu_family: {
        ld mu3 = mu2 * std::sqrt(mu2);
        return mu3 / ((a * c + mu2 * b * d) * (a * A + mu2 * b * B) * (A * c + mu2 * B * d));
    }
    case FlatSeries::tangent_mu_i_half:
        return 1 / ((4 * a * c - b * d) * (4 * a * A - b * B) * (4 * A * c - B * d));
    case FlatSeries::tangent_mu2_coefficient:
        return mt * (b * d / (a * c) + b * B / (a * A) + B * d / (A * c));
    }
    return 0;
}

/// Each summand is at most this multiple of the Mordell-Tornheim summand.
inline ld flat_majorant(FlatSeries s, ld mu2)
{
    switch (s) {
    case FlatSeries::mordell_tornheim:
    case FlatSeries::mu_family: return 1;
    case FlatSeries::mu_i_half:
    case FlatSeries::tangent_mu_i_half: return 1.0L / 27;
    case FlatSeries::mu2_coefficient:
    case FlatSeries::tangent_mu2_coefficient: return 3;
    case FlatSeries::tangent_mu_family: return mu2 * std::sqrt(mu2);
    }
    return 1;
}
} // namespace detail

/// Sum over coprime a, c <= M. The omitted pairs (max(a,c) > M) are bounded
/// by C * 2 zeta(2) / (3 M^3), C the majorant constant of the series.
inline SeriesResult flat_sum_to(FlatSeries s, Rat const & mu, std::int64_t M, unsigned prec = default_precision())
{
    using detail::ld;
    if (M < 1)
        throw InvalidInput("flat_sum: M >= 1");
    if (static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(M) > node_budget())
        throw NonConvergence("flat_sum: M^2 exceeds the node budget");
    if ((s == FlatSeries::mu_family || s == FlatSeries::tangent_mu_family) && mu <= 0)
        throw InvalidInput("flat_sum: needs mu > 0");
    ld mu2 = static_cast<ld>(to_double(Rat(mu * mu)));

    // Neumaier summation in long double; rows summed separately.
    ld total = 0, comp = 0, absum = 0;
    std::uint64_t terms = 0;
    for (std::int64_t a = 1; a <= M; ++a) {
        ld row = 0, rcomp = 0;
        for (std::int64_t c = 1; c <= M; ++c) {
            if (std::gcd(a, c) != 1)
                continue;
            auto [b, d] = unimodular_completion(a, c);
            ld t = detail::flat_term(s, mu2, ld(a), ld(b), ld(c), ld(d));
            ld y = row + t;
            rcomp += std::fabs(row) >= std::fabs(t) ? (row - y) + t : (t - y) + row;
            row = y;
            absum += std::fabs(t);
            ++terms;
        }
        row += rcomp;
        ld y = total + row;
        comp += std::fabs(total) >= std::fabs(row) ? (total - y) + row : (row - y) + total;
        total = y;
    }
    total += comp;

    unsigned wp = prec + 16;
    Real zeta2 = Real::pi(wp) * Real::pi(wp) / Real(6L, wp);
    Real Mr(long(M), wp);
    Real tail = Real(static_cast<double>(detail::flat_majorant(s, mu2)), wp) * 2 * zeta2 /
                (Real(3L, wp) * Mr * Mr * Mr);
    Real rounding = Real(static_cast<double>(absum), wp) * Real(static_cast<double>(terms), wp) *
                    Real(static_cast<double>(std::numeric_limits<ld>::epsilon()), wp);

    SeriesResult out;
    out.value = Real(total, prec);
    out.error_bound = (tail + rounding + Real(std::fabs(total) * 1e-20L, wp))
                          .with_precision(prec);
    out.bound = BoundKind::rigorous;
    out.terms = terms;
    out.depth = 0;
    out.method = Method::direct;
    out.note = "coprime pairs up to M=" + std::to_string(M);
    return out;
}

/// Smallest M whose tail bound is below tol/2.
inline SeriesResult flat_sum(FlatSeries s, Rat const & mu, Real const & tol, unsigned prec = default_precision())
{
    if (tol.sign() <= 0)
        throw InvalidInput("tolerance must be positive");
    long double mu2 = static_cast<long double>(to_double(Rat(mu * mu)));
    long double C = detail::flat_majorant(s, mu2) * 2 * (M_PI * M_PI / 6) / 3;
    long double M = std::ceil(std::cbrt(C / (0.5L * tol.to_double())));
    return flat_sum_to(s, mu, std::max<std::int64_t>(8, static_cast<std::int64_t>(M)), prec);
}

// ---------------------------------------------------------------------------
// Farey-pair series for the form q(m, n) = m n.

/// Sum over n <= N of the closed value of the subtree above (n+1, 2n+1, n).
/// Omitted subtrees total at most 1/(6 N^2).
inline SeriesResult hata_sum(std::int64_t N, unsigned prec = default_precision())
{
    if (N < 1)
        throw InvalidInput("hata: needs N >= 1");
    unsigned wp = prec + 16;
    Real total(0L, wp);
    for (std::int64_t n = 1; n <= N; ++n) {
        total += closed_rst(OrientedEdge{Int(n + 1), Int(2 * n + 1), Int(n)}, wp);
    }
    Real Nr(long(N), wp);
    SeriesResult out;
    out.value = total.with_precision(prec);
    out.error_bound = (Real(1L, wp) / (Real(6L, wp) * Nr * Nr)).with_precision(prec);
    out.bound = BoundKind::rigorous;
    out.terms = static_cast<std::uint64_t>(N);
    out.method = Method::subtree_closed_form;
    out.note = "per-n subtree closed forms";
    return out;
}

/// H_N + H_{N+1} - 1 - 2 log(N+1), the same partial sum in closed form.
inline Real hata_partial_closed(std::int64_t N, unsigned prec = default_precision())
{
    unsigned wp = prec + 16;
    Real H(0L, wp);
    for (std::int64_t n = 1; n <= N; ++n)
        H += Real(1L, wp) / Real(long(n), wp);
    Real H1 = H + Real(1L, wp) / Real(long(N + 1), wp);
    return (H + H1 - Real(1L, wp) - 2 * log(Real(long(N + 1), wp))).with_precision(prec);
}

namespace detail {
/// Sum of (r+s+t)/(rst)^2 over the Farey subtrees, expanding a vertex only
/// while its own term is at least tau.
inline Real hata_second_direct(ld tau, unsigned wp, std::uint64_t & terms, unsigned & depth)
{
    Real total(0L, wp);
    std::vector<StackEntry> stack;
    for (std::int64_t n = 1;; ++n) {
        OrientedEdge root{Int(n + 1), Int(2 * n + 1), Int(n)};
        auto st0 = vertex_star(root);
        ld r0 = ld_of(st0.r), s0 = ld_of(st0.s), t0 = ld_of(st0.t);
        if ((r0 + s0 + t0) / (r0 * s0 * t0 * r0 * s0 * t0) < tau)
            break;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            auto [e, d] = std::move(stack.back());
            stack.pop_back();
            auto st = vertex_star(e);
            ld r = ld_of(st.r), s = ld_of(st.s), t = ld_of(st.t);
            ld est = (r + s + t) / (r * s * t * r * s * t);
            if (est < tau)
                continue;
            if (++terms > node_budget())
                throw NonConvergence("hata_second: node budget exhausted");
            depth = std::max(depth, d);
            Int rst = st.r * st.s * st.t;
            total += Real(Int(st.r + st.s + st.t), wp) / (Real(rst, wp) * Real(rst, wp));
            stack.push_back({e.right_child(), d + 1});
            stack.push_back({e.left_child(), d + 1});
        }
    }
    return total;
}
} // namespace detail

/// Direct enumeration; the tail is extrapolated from three pruning levels
/// and is not a proof.
inline SeriesResult hata_second_sum(Real const & tol, unsigned prec = default_precision())
{
    unsigned wp = prec + 16;
    detail::ld tau = std::pow(static_cast<detail::ld>(tol.to_double()), 1.6L) * 1e-3L;
    std::uint64_t terms = 0, scratch = 0;
    unsigned depth = 0, sdepth = 0;
    Real s0 = detail::hata_second_direct(tau, wp, terms, depth);
    Real s1 = detail::hata_second_direct(tau * 8, wp, scratch, sdepth);
    Real s2 = detail::hata_second_direct(tau * 64, wp, scratch, sdepth);
    Real d0 = s0 - s1, d1 = s1 - s2;
    Real tail = abs(d0) * Real(10L, wp);
    if (!d1.is_zero()) {
        Real rho = d0 / d1;
        if (rho.sign() > 0 && rho < Real(0.9, wp))
            tail = abs(d0) * rho / (Real(1L, wp) - rho);
    }
    SeriesResult out;
    out.value = (s0 + tail * Real(d0.sign() >= 0 ? 1L : -1L, wp)).with_precision(prec);
    out.error_bound = (abs(tail) * Real(2L, wp) + abs(d0)).with_precision(prec);
    out.bound = BoundKind::empirical;
    out.terms = terms;
    out.depth = depth;
    out.method = Method::direct;
    out.note = "vertex-term pruning; tail extrapolated from three thresholds";
    return out;
}

/// Per subtree, sum (r+s+t)/(rst)^2 = h0/(p0 q0)^2 - 6 closed_rst; summed
/// over n <= N with the rigorous bound of the harmonic tail.
inline SeriesResult hata_second_telescoped(std::int64_t N, unsigned prec = default_precision())
{
    unsigned wp = prec + 16;
    Real total(0L, wp);
    for (std::int64_t n = 1; n <= N; ++n) {
        OrientedEdge root{Int(n + 1), Int(2 * n + 1), Int(n)};
        Real pq = Real(Int(root.p * root.q), wp);
        total += Real(root.h, wp) / (pq * pq) - 6 * closed_rst(root, wp);
    }
    Real Nr(long(N), wp);
    SeriesResult out;
    out.value = total.with_precision(prec);
    // first part telescopes to 1 - 1/(N+1)^2; second part's tail <= 1/(6N^2)
    Real n1(long(N + 1), wp);
    out.error_bound = (Real(1L, wp) / (n1 * n1) + Real(1L, wp) / (Nr * Nr)).with_precision(prec);
    out.bound = BoundKind::rigorous;
    out.terms = static_cast<std::uint64_t>(N);
    out.method = Method::telescoped;
    out.note = "second-order telescoping per subtree";
    return out;
}

// ---------------------------------------------------------------------------
// Named series.

struct SeriesParams
{
    Rat mu{1, 2};
    Int D{-4};
    std::optional<QuadraticForm> form;
    std::int64_t N = 10000;
};

inline std::vector<std::string> const & series_ids()
{
    static std::vector<std::string> const ids{
        "hurwitz_quarter",   "full_topograph_neg", "mordell_tornheim",   "mu_family",
        "mu_i_half",         "mu2_coefficient",    "tangent_quarter",    "tangent_mu_family",
        "tangent_mu2_coefficient", "tangent_mu_i_half", "hata",          "hata_second"};
    return ids;
}

namespace detail {
inline void require_known(std::string const & id)
{
    for (auto const & s : series_ids())
        if (s == id)
            return;
    throw UnknownSeries("unknown series: " + id);
}

inline RatEdge mu_root(Rat const & mu)
{
    if (mu <= 0)
        throw InvalidInput("mu must be positive");
    return {Rat(1), Rat(2), Rat(1 + mu * mu)};
}

inline QuadraticForm neg_form(SeriesParams const & p)
{
    if (p.form) {
        if (p.form->discriminant() >= 0)
            throw InvalidInput("full_topograph_neg needs a definite form");
        return *p.form;
    }
    Int D = p.D;
    if (D >= 0 || (D % 4 != 0 && (D % 4 + 4) % 4 != 1))
        throw InvalidInput("full_topograph_neg needs D < 0, D = 0 or 1 mod 4");
    Int b = (D % 2 == 0) ? Int(0) : Int(1);
    return {Int(1), b, Int((b * b - D) / 4)};
}
} // namespace detail

/// The value each named series is proved to converge to.
inline Real expected_value(std::string const & id, SeriesParams const & p = {},
                           unsigned prec = default_precision())
{
    detail::require_known(id);
    Real pi = Real::pi(prec);
    Real one(1L, prec);
    Real ln3 = log(Real(3L, prec));
    Real gamma = Real::euler_gamma(prec);
    Real mu(p.mu, prec);
    if (id == "hurwitz_quarter")
        return pi / Real(4L, prec);
    if (id == "full_topograph_neg") {
        Real aD = abs(Real(detail::neg_form(p).discriminant(), prec));
        return Real(4L, prec) * pi / (aD * sqrt(aD));
    }
    if (id == "mordell_tornheim")
        return one / Real(3L, prec);
    if (id == "mu_family")
        return (2 * atan(mu) / mu - Real(2L, prec) / (one + mu * mu)) / (Real(4L, prec) * mu * mu);
    if (id == "mu_i_half")
        return (Real(4L, prec) / Real(3L, prec) - ln3) / Real(32L, prec);
    if (id == "mu2_coefficient")
        return Real(2L, prec) / Real(5L, prec);
    if (id == "tangent_quarter")
        return one - pi / Real(4L, prec);
    if (id == "tangent_mu_family")
        return mu - atan(mu);
    if (id == "tangent_mu2_coefficient")
        return one / Real(5L, prec);
    if (id == "tangent_mu_i_half")
        return (ln3 - one) / Real(16L, prec);
    if (id == "hata")
        return 2 * gamma - one;
    // hata_second
    return Real(7L, prec) - 12 * gamma;
}

/// Best available route for each series.
inline SeriesResult named_series(std::string const & id, SeriesParams const & p, Real const & tol,
                                 unsigned prec = default_precision())
{
    detail::require_known(id);
    auto scaled = [&](SeriesResult r, Real const & factor) {
        r.value = r.value * factor;
        r.error_bound = r.error_bound * abs(factor);
        return r;
    };
    Real eight(8L, prec);

    if (id == "hurwitz_quarter")
        return sum_rst(OrientedEdge{1, 0, 1}, Int(-4), tol, prec);
    if (id == "full_topograph_neg") {
        auto f = detail::neg_form(p);
        auto root = root_edge(f);
        auto a = sum_rst(root, f.discriminant(), tol / 2, prec);
        auto b = sum_rst(root.reversed(), f.discriminant(), tol / 2, prec);
        a.value += b.value;
        a.error_bound += b.error_bound;
        a.terms += b.terms;
        a.depth = std::max(a.depth, b.depth);
        a.note = "two halves split at the root edge";
        return a;
    }
    if (id == "mordell_tornheim")
        return flat_sum(FlatSeries::mordell_tornheim, Rat(0), tol, prec);
    if (id == "mu_family") {
        auto root = detail::mu_root(p.mu);
        return sum_rst(root, root.discriminant(), tol, prec);
    }
    if (id == "mu_i_half")
        return sum_rst(OrientedEdge{4, 8, 3}, Int(16), tol, prec);
    if (id == "mu2_coefficient")
        return flat_sum(FlatSeries::mu2_coefficient, Rat(0), tol, prec);
    if (id == "tangent_quarter")
        return scaled(sum_efg(OrientedEdge{1, 2, 2}, Int(-4), tol / eight, prec), eight);
    if (id == "tangent_mu_family") {
        auto root = detail::mu_root(p.mu);
        Real mu(p.mu, prec);
        Real f = eight * mu * mu * mu;
        return scaled(sum_efg(root, root.discriminant(), tol / f, prec), f);
    }
    if (id == "tangent_mu2_coefficient")
        return flat_sum(FlatSeries::tangent_mu2_coefficient, Rat(0), tol, prec);
    if (id == "tangent_mu_i_half")
        return scaled(sum_efg(OrientedEdge{4, 8, 3}, Int(16), tol / eight, prec), eight);
    if (id == "hata")
        return hata_sum(p.N, prec);
    return hata_second_sum(tol, prec);
}

/// Independent second route where one exists (flat enumeration for the
/// topograph-evaluated series and vice versa, closed partial sum for hata,
/// second-order telescoping for hata_second).
inline std::optional<SeriesResult> named_series_alternate(std::string const & id, SeriesParams const & p,
                                                          Real const & tol, unsigned prec = default_precision())
{
    detail::require_known(id);
    Real eight(8L, prec);
    if (id == "mordell_tornheim")
        return sum_rst(OrientedEdge{1, 2, 1}, Int(0), tol, prec);
    if (id == "mu_family")
        return flat_sum(FlatSeries::mu_family, p.mu, tol, prec);
    if (id == "mu_i_half")
        return flat_sum(FlatSeries::mu_i_half, Rat(0), tol, prec);
    if (id == "tangent_quarter")
        return flat_sum(FlatSeries::tangent_mu_family, Rat(1), tol, prec);
    if (id == "tangent_mu_family")
        return flat_sum(FlatSeries::tangent_mu_family, p.mu, tol, prec);
    if (id == "tangent_mu_i_half")
        return flat_sum(FlatSeries::tangent_mu_i_half, Rat(0), tol, prec);
    if (id == "hata") {
        SeriesResult r;
        r.value = hata_partial_closed(p.N, prec);
        Real Nr(long(p.N), prec);
        r.error_bound = Real(1L, prec) / (Real(6L, prec) * Nr * Nr);
        r.bound = BoundKind::rigorous;
        r.terms = static_cast<std::uint64_t>(p.N);
        r.method = Method::telescoped;
        r.note = "harmonic-log closed partial sum";
        return r;
    }
    if (id == "hata_second") {
        std::int64_t N = static_cast<std::int64_t>(std::ceil(std::sqrt(2.5 / tol.to_double())));
        return hata_second_telescoped(std::max<std::int64_t>(N, 10), prec);
    }
    return std::nullopt;
}

} // namespace topo
