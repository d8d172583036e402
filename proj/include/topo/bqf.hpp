#pragma once

// Binary quadratic forms, oriented topograph edges and vertex stars.
//
// An oriented edge (p, h, q) has side regions p (left) and q (right) and
// points at the vertex whose third region is the ahead region p + q + h.
// The same triple read as a form is p m^2 + h m n + q n^2.

#include <ostream>
#include <string>
#include <utility>

#include "topo/errors.hpp"
#include "topo/numeric.hpp"

namespace topo {

template <class T>
struct BasicForm
{
    T a, b, c;

    T discriminant() const { return b * b - 4 * a * c; }

    friend bool operator==(BasicForm const &, BasicForm const &) = default;
};

using QuadraticForm = BasicForm<Int>;

template <class T>
T discriminant(BasicForm<T> const & f) { return f.discriminant(); }

template <class T>
T evaluate(BasicForm<T> const & f, T const & m, T const & n)
{
    return f.a * m * m + f.b * m * n + f.c * n * n;
}

template <class T>
struct BasicEdge
{
    T p, h, q;

    T ahead() const { return p + q + h; }
    T discriminant() const { return h * h - 4 * p * q; }

    /// Same edge, pointing at the other endpoint.
    BasicEdge reversed() const { return {q, -h, p}; }

    BasicEdge left_child() const { return {p, 2 * p + h, ahead()}; }
    BasicEdge right_child() const { return {ahead(), 2 * q + h, q}; }

    std::pair<BasicEdge, BasicEdge> children() const
    {
        auto kids = std::make_pair(left_child(), right_child());
#ifndef NDEBUG
        T d = discriminant();
        if (kids.first.discriminant() != d || kids.second.discriminant() != d)
            throw Error("children: discriminant not preserved");
#endif
        return kids;
    }

    BasicForm<T> form() const { return {p, h, q}; }

    friend bool operator==(BasicEdge const &, BasicEdge const &) = default;
};

using OrientedEdge = BasicEdge<Int>;
using RatEdge = BasicEdge<Rat>;

template <class T>
std::ostream & operator<<(std::ostream & os, BasicEdge<T> const & e)
{
    return os << '(' << e.p << ',' << e.h << ',' << e.q << ')';
}

template <class T>
std::ostream & operator<<(std::ostream & os, BasicForm<T> const & f)
{
    return os << '[' << f.a << ',' << f.b << ',' << f.c << ']';
}

template <class T>
T ahead_region(BasicEdge<T> const & e) { return e.ahead(); }

template <class T>
std::pair<BasicEdge<T>, BasicEdge<T>> children(BasicEdge<T> const & e) { return e.children(); }

template <class T>
BasicEdge<T> root_edge(BasicForm<T> const & f) { return {f.a, f.b, f.c}; }

// Walking back up: turn around on a child and step into its sibling's
// neighbour. Only child/reversal moves are used, so these double as a
// check of the local picture.
template <class T>
BasicEdge<T> parent_from_left(BasicEdge<T> const & left)
{
    return left.reversed().right_child().reversed();
}

template <class T>
BasicEdge<T> parent_from_right(BasicEdge<T> const & right)
{
    return right.reversed().left_child().reversed();
}

/// Regions (r, s, t) and outward edge labels (e, f, g) at one vertex.
template <class T>
struct BasicStar
{
    T r, s, t;
    T e, f, g;

    T discriminant() const { return -(e * f + f * g + g * e); }

    friend bool operator==(BasicStar const &, BasicStar const &) = default;
};

using VertexStar = BasicStar<Int>;

/// The star at the vertex an edge points to; e is the edge itself, seen
/// from the vertex.
template <class T>
BasicStar<T> vertex_star(BasicEdge<T> const & edge)
{
    T s = edge.ahead();
    return {edge.p, s, edge.q, -edge.h, 2 * edge.p + edge.h, 2 * edge.q + edge.h};
}

/// Star from three region labels around a vertex (cyclic order r, s, t).
template <class T>
BasicStar<T> star_from_regions(T const & r, T const & s, T const & t)
{
    return {r, s, t, r + t - s, r + s - t, s + t - r};
}

enum class Identity { stu, reci, stu2, stu3, stu4, stu5 };

inline char const * identity_name(Identity id)
{
    switch (id) {
    case Identity::stu: return "eq_stu";
    case Identity::reci: return "eq_reci";
    case Identity::stu2: return "eq_stu2";
    case Identity::stu3: return "eq_stu3";
    case Identity::stu4: return "eq_stu4";
    case Identity::stu5: return "eq_stu5";
    }
    return "?";
}

inline Identity identity_from_name(std::string const & name)
{
    for (Identity id : {Identity::stu, Identity::reci, Identity::stu2, Identity::stu3,
                        Identity::stu4, Identity::stu5})
        if (name == identity_name(id) || "eq_" + name == identity_name(id))
            return id;
    throw InvalidInput("unknown identity: " + name);
}

namespace detail {
template <class T>
void require_nonzero(T const & a, T const & b, T const & c, char const * what)
{
    if (a == 0 || b == 0 || c == 0)
        throw DivisionByZero(std::string(what) + " label is zero");
}
} // namespace detail

/// LHS - RHS of an algebraic vertex identity, exactly.
template <class T>
Rat check_identity(BasicStar<T> const & star, Identity which)
{
    Rat r = to_rat(star.r), s = to_rat(star.s), t = to_rat(star.t);
    Rat e = to_rat(star.e), f = to_rat(star.f), g = to_rat(star.g);
    Rat D = to_rat(star.discriminant());

    switch (which) {
    case Identity::stu:
        detail::require_nonzero(r, s, t, "region");
        return g / (s * t) + f / (r * s) + e / (r * t) + D / (r * s * t);

    case Identity::reci:
        detail::require_nonzero(e, f, g, "edge");
        return 1 / e + 1 / f + 1 / g + D / (e * f * g);

    case Identity::stu2:
        detail::require_nonzero(e, f, g, "edge");
        return s / (f * g) + r / (e * f) + t / (e * g) + D / (e * f * g);

    case Identity::stu3: {
        detail::require_nonzero(r, s, t, "region");
        Rat rst = r * s * t;
        Rat lhs = g / (s * s * t * t) + f / (r * r * s * s) + e / (r * r * t * t);
        return lhs - (-6 / rst - D * (r + s + t) / (rst * rst));
    }

    case Identity::stu4: {
        detail::require_nonzero(e, f, g, "edge");
        Rat efg = e * f * g;
        Rat lhs = s / (f * f * g * g) + r / (e * e * f * f) + t / (e * e * g * g);
        return lhs - (Rat(-3) / (2 * efg) - D * (e + f + g) / (2 * efg * efg));
    }

    case Identity::stu5: {
        // Kept in its stated form; it does not hold (see tests).
        detail::require_nonzero(e, f, g, "edge");
        Rat efg = e * f * g;
        Rat lhs = 1 / (e * e * e) + 1 / (f * f * f) + 1 / (g * g * g);
        return lhs - (-(D * D * D) / (efg * efg * efg) - 3 * D * (e + f + g) / (efg * efg) + e / efg);
    }
    }
    throw InvalidInput("unknown identity");
}

} // namespace topo
