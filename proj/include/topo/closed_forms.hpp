#pragma once

// Closed forms for the half-topograph sums of 1/(rst) and 1/(efg), and the
// angle functions behind them.
//
// For D < 0 the region sum is governed by the doubled angle 2*theta between
// the root basis vectors in the metric of the form; cos(theta) =
// h/(2 sqrt(pq)), so sin(2 theta) = h sqrt(-D)/(2pq) and cos(2 theta) =
// (2pq + D)/(2pq). The edge sum uses theta itself = atan2(sqrt(-D), h).
// For D > 0 the hyperbolic versions are used (principal branches).

#include "topo/bqf.hpp"
#include "topo/errors.hpp"
#include "topo/numeric.hpp"

namespace topo {

/// arcsin(x) on the branch picked by sign(2 p0 q0 + D): principal when the
/// flag is >= 0, pi - arcsin(x) otherwise.
inline Real arcsin_branched(Real const & x, int branch_flag)
{
    unsigned prec = x.precision();
    Real one(1L, prec);
    Real ax = abs(x);
    Real y = x;
    if (ax > one) {
        if (ax - one > Real::exp2i(16 - static_cast<long>(prec), prec))
            throw DomainError("arcsin_branched: |x| > 1");
        y = x.sign() > 0 ? one : -one;
    }
    Real a = asin(y);
    return branch_flag >= 0 ? a : Real::pi(prec) - a;
}

namespace detail {

template <class T>
Real to_real(T const & v, unsigned prec) { return Real(v, prec); }

/// Negative-definite edges are read through -q, which has the same |labels|.
template <class T>
BasicEdge<T> positive_side(BasicEdge<T> const & e)
{
    if (e.p < 0 || (e.p == 0 && e.q < 0))
        return {-e.p, -e.h, -e.q};
    return e;
}

template <class T>
Real sqrt_abs(T const & D, unsigned prec) { return sqrt(abs(Real(D, prec))); }

} // namespace detail

/// 2*theta in (0, 2pi) for a definite edge (D < 0). Edges with h >= 0 use
/// arcsin_branched directly; for h < 0 the angle exceeds pi and is read
/// off the same arcsin value.
template <class T>
Real doubled_angle(BasicEdge<T> const & edge, unsigned prec = default_precision())
{
    T D = edge.discriminant();
    if (D >= 0)
        throw InvalidInput("doubled_angle needs D < 0");
    auto e = detail::positive_side(edge);
    Real k = detail::sqrt_abs(D, prec);
    Real pq2 = Real(e.p, prec) * Real(e.q, prec) * Real(2L, prec);
    Real x = Real(e.h, prec) * k / pq2;
    int flag = sign(T(2 * e.p * e.q + D));
    if (e.h >= 0)
        return arcsin_branched(x, flag);
    Real a = arcsin_branched(x, 1);
    Real pi = Real::pi(prec);
    return flag < 0 ? pi - a : 2 * pi + a;
}

/// Additive angle of an edge for the region sums: the doubled angle for
/// D < 0, arcsinh(h sqrt(D)/(2pq)) for D > 0, and the crown ratio h/(pq)
/// (the D -> 0 limit, after rescaling) for D = 0.
template <class T>
Real region_angle(BasicEdge<T> const & edge, unsigned prec = default_precision())
{
    T D = edge.discriminant();
    if (D < 0)
        return doubled_angle(edge, prec);
    if (edge.p == 0 || edge.q == 0)
        throw DivisionByZero("region_angle: zero region label");
    Real ratio = Real(edge.h, prec) / (Real(edge.p, prec) * Real(edge.q, prec));
    if (D == 0)
        return ratio;
    Real k = detail::sqrt_abs(D, prec);
    return asinh(ratio * k / Real(2L, prec));
}

/// Additive angle of an edge for the edge sums: atan2(sqrt(-D), h) for
/// D < 0, arctanh(sqrt(D)/h) for D > 0 (needs |h| > sqrt(D)), 1/h for D = 0.
template <class T>
Real edge_angle(BasicEdge<T> const & edge, unsigned prec = default_precision())
{
    T D = edge.discriminant();
    Real h(edge.h, prec);
    if (D < 0)
        return atan2(detail::sqrt_abs(D, prec), h);
    if (edge.h == 0)
        throw DivisionByZero("edge_angle: zero edge label");
    if (D == 0)
        return Real(1L, prec) / h;
    return atanh(detail::sqrt_abs(D, prec) / h);
}

/// Sum of 1/|rst| over the half topograph above `root`.
///
/// D < 0: any root (h0 < 0 is allowed; the angle then exceeds pi).
/// D > 0 and D = 0: the root must be climbing (up to a global sign).
template <class T>
Real closed_rst(BasicEdge<T> const & root, unsigned prec = default_precision())
{
    auto e = detail::positive_side(root);
    T D = e.discriminant();
    if (e.p == 0 || e.q == 0)
        throw InvalidInput("closed_rst: root touches a zero region");
    Real ratio = Real(e.h, prec) / (Real(e.p, prec) * Real(e.q, prec));
    if (D < 0) {
        Real k = detail::sqrt_abs(D, prec);
        return (ratio - 2 * doubled_angle(e, prec) / k) / Real(D, prec);
    }
    if (!(e.p > 0 && e.q > 0 && e.h > 0))
        throw InvalidInput("closed_rst: root is not climbing");
    if (D == 0)
        return ratio * ratio * ratio / Real(24L, prec);
    Real k = detail::sqrt_abs(D, prec);
    return (ratio - 2 * asinh(ratio * k / Real(2L, prec)) / k) / Real(D, prec);
}

/// Sum of 1/|efg| over the half topograph whose root edge has label h0.
template <class T>
Real closed_efg(T const & D, T const & h0, unsigned prec = default_precision())
{
    if (h0 <= 0)
        throw InvalidInput("closed_efg: needs h0 > 0");
    if (D > 0 && h0 * h0 <= D)
        throw InvalidInput("closed_efg: needs h0 > sqrt(D)");
    Real h(h0, prec);
    if (D == 0)
        return Real(1L, prec) / (Real(3L, prec) * h * h * h);
    Real k = detail::sqrt_abs(D, prec);
    Real inv = Real(1L, prec) / h;
    Real ang = D < 0 ? atan(k / h) : atanh(k / h);
    return (ang / k - inv) / Real(D, prec);
}

template <class T>
Real closed_efg(BasicEdge<T> const & root, unsigned prec = default_precision())
{
    auto e = detail::positive_side(root);
    return closed_efg(e.discriminant(), e.h, prec);
}

enum class TrigIdentity {
    arcsin_sum,   // arcsin / arcsinh triple sum, outward orientation
    arctan_sum,   // arctan / arctanh triple sum, outward orientation
    arcsin_split, // incoming edge split into the two outgoing ones
    arctan_split,
};

inline char const * trig_identity_name(TrigIdentity id)
{
    switch (id) {
    case TrigIdentity::arcsin_sum: return "arcsin_sum";
    case TrigIdentity::arctan_sum: return "arctan_sum";
    case TrigIdentity::arcsin_split: return "arcsin_split";
    case TrigIdentity::arctan_split: return "arctan_split";
    }
    return "?";
}

/// Residual of one of the inverse-trigonometric vertex identities at a
/// star, with the branch rules above. Uses arcsin/arctan for D < 0 and
/// arcsinh/arctanh for D > 0.
///
/// In the outward (sum) form the e-term is read on the branch of the
/// reversed edge: arcsin(e sqrt(-D)/(2rt)) := -A(r, -e, t).
template <class T>
Real trig_residual(BasicStar<T> const & st, TrigIdentity which, unsigned prec = default_precision())
{
    T D = st.discriminant();
    if (D == 0)
        throw InvalidInput("trig_residual: D = 0");
    if (D < 0 && st.r < 0) // negative definite: read through -q
        return trig_residual(BasicStar<T>{-st.r, -st.s, -st.t, -st.e, -st.f, -st.g}, which, prec);
    BasicEdge<T> in{st.r, -st.e, st.t};
    BasicEdge<T> left{st.r, st.f, st.s};
    BasicEdge<T> right{st.s, st.g, st.t};

    if (D > 0) {
        Real k = detail::sqrt_abs(D, prec);
        auto sinh_term = [&](T const & lab, T const & a, T const & b) {
            if (a == 0 || b == 0)
                throw DivisionByZero("trig_residual: zero region label");
            return asinh(Real(lab, prec) * k / (Real(2L, prec) * Real(a, prec) * Real(b, prec)));
        };
        auto tanh_term = [&](T const & lab) {
            if (lab == 0)
                throw DivisionByZero("trig_residual: zero edge label");
            return atanh(k / Real(lab, prec));
        };
        switch (which) {
        case TrigIdentity::arcsin_sum:
            return sinh_term(st.e, st.r, st.t) + sinh_term(st.f, st.r, st.s) + sinh_term(st.g, st.s, st.t);
        case TrigIdentity::arctan_sum:
            return tanh_term(st.e) + tanh_term(st.f) + tanh_term(st.g);
        case TrigIdentity::arcsin_split:
            return sinh_term(-st.e, st.r, st.t) - sinh_term(st.f, st.r, st.s) - sinh_term(st.g, st.s, st.t);
        case TrigIdentity::arctan_split:
            return tanh_term(-st.e) - tanh_term(st.f) - tanh_term(st.g);
        }
    }

    switch (which) {
    case TrigIdentity::arcsin_sum:
        return -doubled_angle(in, prec) + doubled_angle(left, prec) + doubled_angle(right, prec);
    case TrigIdentity::arctan_sum:
        return -edge_angle(in, prec) + edge_angle(left, prec) + edge_angle(right, prec);
    case TrigIdentity::arcsin_split:
        return doubled_angle(in, prec) - doubled_angle(left, prec) - doubled_angle(right, prec);
    case TrigIdentity::arctan_split:
        return edge_angle(in, prec) - edge_angle(left, prec) - edge_angle(right, prec);
    }
    throw InvalidInput("unknown trig identity");
}

} // namespace topo
