#pragma once

// Indefinite forms: the river, its period, the fundamental unit, and the
// edge sums around the river. Square discriminants have two lakes instead
// of a periodic river; the sum between them is evaluated as well.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "topo/arith.hpp"
#include "topo/bqf.hpp"
#include "topo/closed_forms.hpp"
#include "topo/errors.hpp"
#include "topo/numeric.hpp"
#include "topo/series.hpp"
#include "topo/special_functions.hpp"

namespace topo {

inline constexpr std::uint64_t kRiverStepLimit = 1u << 22;

namespace detail {
inline void require_nonsquare_positive(Int const & D)
{
    if (D <= 0)
        throw NotIndefinite("discriminant must be positive");
    if (is_square(D))
        throw NotIndefinite("square discriminant: the topograph has lakes, not a river");
}
} // namespace detail

/// The form [1, b, (b^2 - D)/4] with b = D mod 2.
inline QuadraticForm principal_form(Int const & D)
{
    Int r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw InvalidInput("discriminant must be 0 or 1 mod 4");
    Int b = r;
    return {Int(1), b, Int((b * b - D) / 4)};
}

/// A river edge (p, h, q) with p > 0 > q, reached from the root edge of
/// `form` by walking downhill. Downhill means along the outgoing edge whose
/// label, read with the sign of the regions, is negative; by the climbing
/// lemma such an edge exists at every vertex off the river.
inline OrientedEdge find_river(QuadraticForm const & form)
{
    Int D = form.discriminant();
    detail::require_nonsquare_positive(D);
    OrientedEdge e = root_edge(form);
    for (std::uint64_t step = 0; step < kRiverStepLimit; ++step) {
        if (e.p * e.q < 0)
            return e.p > 0 ? e : e.reversed();
        int sg = sign(e.p);
        if (sign(e.h) == sg)
            e = e.reversed();
        Int s = e.ahead();
        if (sign(s) != sg)
            return sg > 0 ? OrientedEdge{e.p, Int(2 * e.p + e.h), s} : OrientedEdge{s, Int(-(2 * e.p + e.h)), e.p};
        auto l = e.left_child();
        e = sign(l.h) != sg ? l : e.right_child();
    }
    throw PeriodNotFound("find_river: no sign change within the step limit");
}

struct RiverPeriod
{
    Int D;
    std::vector<OrientedEdge> river;      // consecutive river edges, p > 0 > q
    std::vector<OrientedEdge> off_river;  // one per river vertex, pointing away, positive side
};

/// One period of the river starting at `start`. Vertex k lies ahead of
/// river[k]; its third edge leaves the river as off_river[k], normalised to
/// positive labels so it is the root of a climbing half.
inline RiverPeriod river_period(OrientedEdge const & start, std::uint64_t max_steps = kRiverStepLimit)
{
    if (!(start.p > 0 && start.q < 0))
        throw InvalidInput("river_period: needs p > 0 > q");
    Int D = start.discriminant();
    detail::require_nonsquare_positive(D);
    RiverPeriod out;
    out.D = D;
    OrientedEdge e = start;
    for (std::uint64_t step = 0; step < max_steps; ++step) {
        out.river.push_back(e);
        Int s = e.ahead();
        if (s > 0) {
            out.off_river.push_back(e.left_child());
            e = e.right_child();
        } else {
            auto r = e.right_child();
            out.off_river.push_back({-r.p, -r.h, -r.q});
            e = e.left_child();
        }
        if (e == start)
            return out;
    }
    throw PeriodNotFound("river_period: no repetition within the step limit");
}

inline RiverPeriod river_period(QuadraticForm const & form) { return river_period(find_river(form)); }

struct PellSolution
{
    Int t, u;
    Real epsilon;     // (t + u sqrt D)/2
    Real log_epsilon;
};

/// Least u > 0 with D u^2 + 4 a square, by direct search.
inline PellSolution fundamental_unit(Int const & D, unsigned prec = default_precision(),
                                     std::uint64_t max_u = 100000000)
{
    detail::require_nonsquare_positive(D);
    for (std::uint64_t u = 1; u <= max_u; ++u) {
        Int uu(u);
        Int t2 = D * uu * uu + 4;
        Int t = isqrt(t2);
        if (t * t == t2) {
            Real eps = (Real(t, prec) + Real(uu, prec) * sqrt(Real(D, prec))) / Real(2L, prec);
            return {t, uu, eps, log(eps)};
        }
    }
    throw ResourceLimit("fundamental_unit: search bound exceeded");
}

/// Sum over one river period of arctanh(sqrt(D)/|e|), e the off-river labels.
inline Real river_sum(RiverPeriod const & rp, unsigned prec = default_precision())
{
    unsigned wp = prec + 16;
    Real k = sqrt(Real(rp.D, wp));
    Real total(0L, wp);
    for (auto const & e : rp.off_river)
        total += atanh(k / abs(Real(e.h, wp)));
    return total.with_precision(prec);
}

/// The arctanh sum for the principal topograph of discriminant D; equals
/// 2 log(epsilon_D).
inline Real corollary_river_sum(Int const & D, unsigned prec = default_precision())
{
    detail::require_nonsquare_positive(D);
    return river_sum(river_period(principal_form(D)), prec);
}

/// Sum of 1/|efg| over every vertex off the river, arranged per river
/// vertex as sqrt(D)/|e| + D^{3/2} S(e), S the edge sum of the half above
/// the off-river edge. Converges to 2 log(epsilon_D).
inline SeriesResult osullivan_edge_sum(Int const & D, Real const & tol, unsigned prec = default_precision())
{
    detail::require_nonsquare_positive(D);
    if (tol.sign() <= 0)
        throw InvalidInput("tolerance must be positive");
    auto rp = river_period(principal_form(D));
    unsigned wp = prec + 16;
    Real Dr(D, wp);
    Real k = sqrt(Dr);
    Real D32 = Dr * k;
    Real share = tol / (D32 * Real(long(rp.off_river.size()), wp));

    SeriesResult out;
    out.value = Real(0L, wp);
    out.error_bound = Real(0L, wp);
    for (auto const & e : rp.off_river) {
        if (e.h <= 0)
            throw InvalidInput("off-river edge not climbing");
        auto sub = sum_efg(e, D, share, wp);
        out.value += k / Real(e.h, wp) + D32 * sub.value;
        out.error_bound += D32 * sub.error_bound;
        out.terms += sub.terms;
        out.depth = std::max(out.depth, sub.depth);
    }
    out.value = out.value.with_precision(prec);
    out.error_bound = out.error_bound.with_precision(prec);
    out.bound = BoundKind::estimated;
    out.method = Method::subtree_closed_form;
    out.note = "river period " + std::to_string(rp.off_river.size());
    return out;
}

// ---------------------------------------------------------------------------
// Square discriminants D = m^2.

struct SquareRiver
{
    Real value;
    std::int64_t s = 0;            // residue class of the second lake's neighbours
    std::vector<Int> labels;       // off-river labels between the lakes
};

namespace detail {
inline SquareRiver square_river_walk(std::int64_t m, std::int64_t r, unsigned prec)
{
    if (m < 2 || r < 1 || r >= m || std::gcd(m, r) != 1)
        throw InvalidInput("square_river: needs m >= 2, 0 < r < m, gcd(r, m) = 1");
    // form [r, m, 0]: the lake at (0,1) borders r + mk; the river leaves it
    // between r and r - m.
    OrientedEdge e{Int(r), Int(2 * r - m), Int(r - m)};
    unsigned wp = prec + 16;
    Real mr(long(m), wp);
    SquareRiver out;
    Real total(0L, wp);
    for (std::uint64_t step = 0; step < kRiverStepLimit; ++step) {
        Int s = e.ahead();
        if (s == 0) {
            Int res = ((e.p % m) + m) % m;
            out.s = static_cast<std::int64_t>(res);
            out.value = total.with_precision(prec);
            return out;
        }
        Int lab;
        if (s > 0) {
            lab = e.left_child().h;
            e = e.right_child();
        } else {
            lab = e.right_child().h;
            e = e.left_child();
        }
        out.labels.push_back(lab);
        total += atanh(mr / abs(Real(lab, wp)));
    }
    throw PeriodNotFound("square_river: second lake not reached");
}
} // namespace detail

/// Sum of arctanh(m/|e|) over the off-river labels between the two lakes of
/// the topograph of [r, m, 0]. If s is given it must be the residue class
/// (up to sign) of the second lake's neighbours.
inline SquareRiver square_river(std::int64_t m, std::int64_t r, std::optional<std::int64_t> s = std::nullopt,
                                unsigned prec = default_precision())
{
    auto out = detail::square_river_walk(m, r, prec);
    if (s) {
        std::int64_t v = ((*s % m) + m) % m;
        if (v != out.s && v != m - out.s)
            throw InvalidInput("square_river: s does not match the second lake");
    }
    return out;
}

inline Real square_river_sum(std::int64_t m, std::int64_t r, std::optional<std::int64_t> s = std::nullopt,
                             unsigned prec = default_precision())
{
    return square_river(m, r, s, prec).value;
}

/// 1/2 log(r (m - r) s (m - s)).
inline Real square_river_expected(std::int64_t m, std::int64_t r, std::int64_t s, unsigned prec = default_precision())
{
    Int prod = Int(r) * Int(m - r) * Int(s) * Int(m - s);
    return log(Real(prod, prec)) / Real(2L, prec);
}

/// Default reduction predicate for [a, b, c] of discriminant m^2:
/// a > 0, c > 0, b > a + c.
inline bool z_reduced(Int const & a, Int const & b, Int const & c)
{
    return a > 0 && c > 0 && b > a + c;
}

using ReductionPredicate = std::function<bool(Int const &, Int const &, Int const &)>;

struct SquareClassIdentity
{
    Real lhs;            // triple sum + reduced-form sum
    Real rhs;
    Real triple_sum;
    Real reduced_sum;
    Real tail;           // extrapolated triple-sum tail
    BoundKind bound = BoundKind::empirical;
    std::int64_t cutoff = 0;
    std::uint64_t terms = 0;
    std::vector<QuadraticForm> reduced_forms;
};

/// m sum_{d|m} mu(d)/d psi(m/(2d)) - phi(m) sum_{p|m} log p/(p - 1).
inline Real square_class_rhs(std::int64_t m, unsigned prec = default_precision())
{
    if (m < 2)
        throw InvalidInput("square_class_rhs: needs m >= 2");
    unsigned wp = prec + 16;
    Real mm(long(m), wp);
    Real psi_sum(0L, wp);
    for (auto d : arith::divisors(m)) {
        int mu = arith::mobius(d);
        if (mu == 0)
            continue;
        Real t = digamma(mm / Real(long(2 * d), wp)) / Real(long(d), wp);
        psi_sum += mu > 0 ? t : -t;
    }
    Real primes(0L, wp);
    for (auto p : arith::prime_divisors(m))
        primes += log(Real(long(p), wp)) / Real(long(p - 1), wp);
    return (mm * psi_sum - Real(long(arith::euler_phi(m)), wp) * primes).with_precision(prec);
}

namespace detail {
/// Sum of m^3 / (3 b (b + 2a)(b + 2c)) over primitive [a, b, c] of
/// discriminant m^2 with a, c > 0, a + b + c > 0, |b| > m, |b| <= B.
/// Partial sums at B/2 are returned in `half`.
inline long double square_triple_sum(std::int64_t m, std::int64_t B, long double & half, std::uint64_t & terms)
{
    std::int64_t top = (B + m) / 2 + 1;
    if (top > 0xFFFFFFF0LL)
        throw ResourceLimit("square triple sum: cutoff too large");
    arith::SpfSieve sieve(static_cast<std::uint32_t>(top));
    long double m3 = static_cast<long double>(m) * m * m;
    long double total = 0, comp = 0;
    half = 0;
    std::vector<std::pair<std::uint64_t, int>> fac;
    std::int64_t start = m + 2;
    for (std::int64_t ab = start; ab <= B; ab += 2) {
        if (ab == B / 2 + 1 || ab == B / 2 + 2)
            half = total + comp;
        fac.clear();
        sieve.factor_into(static_cast<std::uint32_t>((ab - m) / 2), fac);
        sieve.factor_into(static_cast<std::uint32_t>((ab + m) / 2), fac);
        std::uint64_t N = static_cast<std::uint64_t>((ab - m) / 2) * static_cast<std::uint64_t>((ab + m) / 2);
        for (auto a : arith::divisors_from(fac)) {
            std::uint64_t c = N / a;
            for (int sg : {1, -1}) {
                std::int64_t b = sg * ab;
                if (sg < 0 && static_cast<std::int64_t>(a + c) <= ab)
                    continue;
                if (std::gcd(std::gcd(static_cast<std::int64_t>(a), b), static_cast<std::int64_t>(c)) != 1)
                    continue;
                long double t = m3 / (3.0L * b * (b + 2.0L * a) * (b + 2.0L * c));
                long double y = total + t;
                comp += std::fabs(total) >= std::fabs(t) ? (total - y) + t : (t - y) + total;
                total = y;
                ++terms;
            }
        }
    }
    return total + comp;
}
} // namespace detail

/// Both sides of the class identity for D = m^2. The triple sum is cut at
/// |b| <= B and its tail extrapolated from the B/2 partial sum assuming
/// B^{-3/2} decay; that tail is empirical.
inline SquareClassIdentity square_class_identity(std::int64_t m, std::int64_t B = 30000,
                                                 ReductionPredicate reduced = z_reduced,
                                                 unsigned prec = default_precision())
{
    if (m < 2)
        throw InvalidInput("square_class_identity: needs m >= 2");
    if (B < 4 * m)
        throw InvalidInput("square_class_identity: cutoff too small");
    if ((B - m) % 2)
        --B;
    unsigned wp = prec + 16;
    SquareClassIdentity out;
    out.cutoff = B;

    long double half = 0;
    long double full = detail::square_triple_sum(m, B, half, out.terms);
    long double tail = (full - half) / (std::pow(2.0L, 1.5L) - 1);
    out.triple_sum = Real(full + tail, wp);
    out.tail = Real(std::fabs(tail), prec);

    // the reduced forms live in the box 1 <= a, c <= m^2 (from b^2 - (a+c)^2 = m^2 - (a-c)^2 > 0)
    Real red(0L, wp);
    Int M2 = Int(m) * m;
    for (Int a = 1; a <= M2; ++a)
        for (Int c = 1; c <= M2; ++c) {
            Int b2 = M2 + 4 * a * c;
            if (!is_square(b2))
                continue;
            Int b = isqrt(b2);
            if (!reduced(a, b, c) || gcd(gcd(a, b), c) != 1)
                continue;
            out.reduced_forms.push_back({a, b, c});
            red += Real(long(m), wp) / Real(b, wp);
        }
    out.reduced_sum = red.with_precision(prec);
    out.lhs = (out.triple_sum + red).with_precision(prec);
    out.triple_sum = out.triple_sum.with_precision(prec);
    out.rhs = square_class_rhs(m, prec);
    return out;
}

/// Doubles the cutoff from 2000 until the extrapolated tail is below tol/2.
inline SquareClassIdentity square_class_identity(std::int64_t m, Real const & tol,
                                                 ReductionPredicate reduced = z_reduced,
                                                 unsigned prec = default_precision())
{
    if (tol.sign() <= 0)
        throw InvalidInput("tolerance must be positive");
    Real target = tol / Real(2L, tol.precision());
    for (std::int64_t B = std::max<std::int64_t>(2000, 8 * m); B <= (std::int64_t(1) << 26); B *= 2) {
        auto out = square_class_identity(m, B, reduced, prec);
        if (out.tail <= target)
            return out;
    }
    throw NonConvergence("square_class_identity: tail not below tol within the cutoff limit");
}

} // namespace topo
