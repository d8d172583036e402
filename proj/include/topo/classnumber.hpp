#pragma once

// Class numbers of negative discriminants from reduced forms, the sum over
// a whole definite topograph, and the Hurwitz class-number series.

#include <cmath>
#include <cstdint>
#include <vector>

#include "topo/bqf.hpp"
#include "topo/closed_forms.hpp"
#include "topo/errors.hpp"
#include "topo/numeric.hpp"
#include "topo/series.hpp"

namespace topo {

struct ReducedFormSet
{
    Int D;
    std::vector<QuadraticForm> forms;
    int omega = 1;

    std::size_t class_number() const { return forms.size(); }
};

inline int omega_of(Int const & D)
{
    if (D == -3)
        return 3;
    if (D == -4)
        return 2;
    return 1;
}

/// |b| <= a <= c, b >= 0 on the boundary, primitive.
inline ReducedFormSet reduced_forms(Int const & D)
{
    if (D >= 0)
        throw InvalidInput("reduced_forms: needs D < 0");
    Int r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1)
        throw InvalidInput("reduced_forms: D must be 0 or 1 mod 4");
    ReducedFormSet out;
    out.D = D;
    out.omega = omega_of(D);
    Int amax = isqrt(Int(-D / 3));
    for (Int a = 1; a <= amax; ++a)
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            Int c = num / (4 * a);
            if (c < a || (a == c && b < 0))
                continue;
            if (gcd(gcd(a, b), c) != 1)
                continue;
            out.forms.push_back({a, b, c});
        }
    return out;
}

inline bool is_fundamental(Int const & D)
{
    if (D == 0 || D == 1)
        return false;
    auto squarefree = [](Int n) {
        if (n < 0)
            n = -n;
        for (Int p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0)
                return false;
        return true;
    };
    Int r = ((D % 4) + 4) % 4;
    if (r == 1)
        return squarefree(D);
    if (r != 0)
        return false;
    Int m = D / 4;
    Int mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && squarefree(m);
}

struct Theorem13Report
{
    Real split_value;      // |D|^{3/2} times the sum, two closed halves
    Real split_deviation;
    Real direct_value;     // the same from pruned evaluation of both halves
    Real direct_deviation;
    Real direct_error_bound;
    std::uint64_t direct_terms = 0;

    Real deviation() const { return max(split_deviation, direct_deviation); }
};

/// |D|^{3/2} times the sum of 1/|rst| over the whole topograph, which is 4 pi.
inline Theorem13Report theorem13_check(QuadraticForm const & form, Real const & tol,
                                       unsigned prec = default_precision())
{
    Int D = form.discriminant();
    if (D >= 0)
        throw InvalidInput("theorem13_check: needs D < 0");
    unsigned wp = prec + 16;
    Real aD = abs(Real(D, wp));
    Real scale = aD * sqrt(aD);
    Real four_pi = 4 * Real::pi(wp);
    auto root = root_edge(form);

    Theorem13Report rep;
    Real split = scale * (closed_rst(root, wp) + closed_rst(root.reversed(), wp));
    rep.split_value = split.with_precision(prec);
    rep.split_deviation = abs(split - four_pi).with_precision(prec);

    Real half_tol = tol / (Real(2L, wp) * scale);
    auto a = sum_rst(root, D, half_tol, wp);
    auto b = sum_rst(root.reversed(), D, half_tol, wp);
    Real direct = scale * (a.value + b.value);
    rep.direct_value = direct.with_precision(prec);
    rep.direct_deviation = abs(direct - four_pi).with_precision(prec);
    rep.direct_error_bound = (scale * (a.error_bound + b.error_bound)).with_precision(prec);
    rep.direct_terms = a.terms + b.terms;
    return rep;
}

struct HurwitzReport
{
    Int D;
    std::size_t h = 0;
    int omega = 1;
    Real series_value;        // class decomposition: 3/omega vertex sums per class
    Real direct_value;        // truncated enumeration over forms, extrapolated
    Real direct_tail;         // size of the extrapolation step (empirical)
    std::int64_t direct_cutoff = 0;
    std::uint64_t direct_terms = 0;
};

namespace detail {
/// Sum of 1/(A C (A+B+C)) over A, C > 0, B^2 - 4AC = D, |B| <= M.
inline long double hurwitz_partial(std::int64_t D, std::int64_t M, std::uint64_t & terms)
{
    long double total = 0, comp = 0;
    std::int64_t b0 = ((D % 2) + 2) % 2;
    for (std::int64_t B = b0; B <= M; B += 2) {
        std::int64_t N = (B * B - D) / 4;
        for (std::int64_t A = 1; A * A <= N; ++A) {
            if (N % A)
                continue;
            std::int64_t C = N / A;
            // both signs of B, and the swap A <-> C when A != C
            long double t = 0;
            for (int sg : {1, -1}) {
                if (sg < 0 && B == 0)
                    break;
                long double s = static_cast<long double>(A + C + sg * B);
                t += 1.0L / (static_cast<long double>(A) * C * s);
            }
            if (A != C)
                t *= 2;
            long double y = total + t;
            comp += std::fabs(total) >= std::fabs(t) ? (total - y) + t : (t - y) + total;
            total = y;
            terms += A != C ? 4 : 2;
        }
    }
    return total + comp;
}
} // namespace detail

/// (omega/(12 pi)) |D|^{3/2} times the sum over all forms of discriminant D
/// of 1/(A(A+B+C)C), by class decomposition and by direct enumeration.
/// The direct route truncates at |B| <= M, extrapolates assuming M^{-3/2}
/// decay and doubles M until the extrapolation step is below tol/4.
inline HurwitzReport hurwitz_check(Int const & D, Real const & tol, unsigned prec = default_precision(),
                                   std::int64_t max_cutoff = 1 << 15)
{
    if (D >= 0 || !is_fundamental(D))
        throw InvalidInput("hurwitz_check: needs a negative fundamental discriminant");
    if (tol.sign() <= 0)
        throw InvalidInput("tolerance must be positive");
    unsigned wp = prec + 16;
    auto rf = reduced_forms(D);
    HurwitzReport rep;
    rep.D = D;
    rep.h = rf.class_number();
    rep.omega = rf.omega;

    Real aD = abs(Real(D, wp));
    Real factor = Real(long(rf.omega), wp) / (12 * Real::pi(wp)) * aD * sqrt(aD);

    Real decomposed(0L, wp);
    for (auto const & f : rf.forms) {
        auto root = root_edge(f);
        Real vertex_sum = closed_rst(root, wp) + closed_rst(root.reversed(), wp);
        decomposed += Real(3L, wp) * vertex_sum / Real(long(rf.omega), wp);
    }
    rep.series_value = (factor * decomposed).with_precision(prec);

    std::int64_t d = static_cast<std::int64_t>(D);
    long double fac = static_cast<long double>(factor.to_double());
    long double k = std::pow(2.0L, 1.5L) - 1;
    std::uint64_t scratch = 0;
    long double prev = detail::hurwitz_partial(d, 125, scratch) * fac;
    for (std::int64_t M = 250; M <= max_cutoff; M *= 2) {
        std::uint64_t terms = 0;
        long double cur = detail::hurwitz_partial(d, M, terms) * fac;
        long double step = (cur - prev) / k;
        rep.direct_value = Real(cur + step, prec);
        rep.direct_tail = Real(std::fabs(step), prec);
        rep.direct_cutoff = M;
        rep.direct_terms = terms;
        if (std::fabs(step) < 0.25L * static_cast<long double>(tol.to_double()))
            return rep;
        prev = cur;
    }
    throw NonConvergence("hurwitz_check: direct route did not reach tol within the cutoff limit");
}

} // namespace topo
