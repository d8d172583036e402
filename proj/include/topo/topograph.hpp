#pragma once

// Depth-bounded traversal of an upper half topograph, the telescoped crown
// sums and their brute-force counterparts, and DOT / JSON export.
//
// Depths: the root edge and the vertex it points to have depth 0; the
// frontier at depth n holds the 2^n edges leaving the depth n-1 vertices.
// "Partial sums to depth n" run over vertices of depth 0..n-1.

#include <atomic>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "topo/bqf.hpp"
#include "topo/errors.hpp"
#include "topo/numeric.hpp"

namespace topo {

inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t(1) << 26;

namespace detail {
inline std::atomic<std::uint64_t> & budget_cell()
{
    static std::atomic<std::uint64_t> cell{kDefaultNodeBudget};
    return cell;
}
} // namespace detail

/// Largest number of edges a traversal may hold or visit.
inline std::uint64_t node_budget() { return detail::budget_cell().load(); }
inline void set_node_budget(std::uint64_t n) { detail::budget_cell().store(n == 0 ? 1 : n); }

template <class T>
struct BasicFrontier
{
    unsigned depth = 0;
    std::vector<BasicEdge<T>> edges;
};

using Frontier = BasicFrontier<Int>;

inline void check_depth_budget(unsigned n, std::uint64_t budget)
{
    if (n >= 63 || (std::uint64_t(1) << n) > budget)
        throw ResourceLimit("depth " + std::to_string(n) + " exceeds node budget " +
                            std::to_string(budget));
}

template <class T>
BasicFrontier<T> frontier(BasicEdge<T> const & root, unsigned n, std::uint64_t budget = node_budget())
{
    check_depth_budget(n, budget);
    BasicFrontier<T> out;
    out.edges.push_back(root);
    for (unsigned k = 0; k < n; ++k) {
        std::vector<BasicEdge<T>> next;
        next.reserve(out.edges.size() * 2);
        for (auto const & e : out.edges) {
            auto [l, r] = e.children();
            next.push_back(std::move(l));
            next.push_back(std::move(r));
        }
        out.edges = std::move(next);
    }
    out.depth = n;
    return out;
}

/// Stars of all vertices of depth 0..n-1, level by level, left to right.
template <class T>
std::vector<BasicStar<T>> vertices(BasicEdge<T> const & root, unsigned n, std::uint64_t budget = node_budget())
{
    std::vector<BasicStar<T>> out;
    if (n == 0)
        return out;
    check_depth_budget(n, budget);
    std::vector<BasicEdge<T>> level{root};
    for (unsigned k = 0; k < n; ++k) {
        std::vector<BasicEdge<T>> next;
        for (auto const & e : level) {
            out.push_back(vertex_star(e));
            if (k + 1 < n) {
                next.push_back(e.left_child());
                next.push_back(e.right_child());
            }
        }
        level = std::move(next);
    }
    return out;
}

enum class AdmissibilityCriterion { climbing, checked_to_depth };

struct AdmissibilityReport
{
    bool admissible = false;
    AdmissibilityCriterion criterion = AdmissibilityCriterion::checked_to_depth;
    unsigned checked_depth = 0;
};

template <class T>
bool is_climbing(BasicEdge<T> const & e)
{
    return e.p > 0 && e.q > 0 && e.h >= 0;
}

/// Climbing roots are admissible outright; anything else gets a scan for
/// vanishing labels over the first `scan_depth` levels of vertices.
template <class T>
AdmissibilityReport is_admissible(BasicEdge<T> const & root, T const & D, unsigned scan_depth = 12)
{
    if (root.discriminant() != D)
        throw InvalidInput("root does not have the stated discriminant");
    if (is_climbing(root))
        return {true, AdmissibilityCriterion::climbing, 0};

    std::vector<BasicEdge<T>> level{root};
    for (unsigned k = 0; k < scan_depth; ++k) {
        std::vector<BasicEdge<T>> next;
        for (auto const & e : level) {
            auto st = vertex_star(e);
            if (st.r == 0 || st.s == 0 || st.t == 0 || st.e == 0 || st.f == 0 || st.g == 0)
                return {false, AdmissibilityCriterion::checked_to_depth, k};
            next.push_back(e.left_child());
            next.push_back(e.right_child());
        }
        level = std::move(next);
    }
    return {true, AdmissibilityCriterion::checked_to_depth, scan_depth};
}

/// Sum by pairwise halving; keeps intermediate denominators small.
inline Rat sum_balanced(std::vector<Rat> v)
{
    if (v.empty())
        return Rat(0);
    while (v.size() > 1) {
        std::size_t half = (v.size() + 1) / 2;
        for (std::size_t i = 0; i + half < v.size(); ++i)
            v[i] += v[i + half];
        v.resize(half);
    }
    return v.front();
}

namespace detail {
template <class T>
Rat crown_ratio(BasicEdge<T> const & e)
{
    if (e.p == 0 || e.q == 0)
        throw DivisionByZero("crown edge with zero region label");
    return to_rat(e.h) / (to_rat(e.p) * to_rat(e.q));
}

template <class T>
Rat inverse_label(BasicEdge<T> const & e)
{
    if (e.h == 0)
        throw DivisionByZero("crown edge with zero label");
    return 1 / to_rat(e.h);
}
} // namespace detail

/// (1/D)(h0/(p0 q0) - sum over the depth-n crown of h/(pq)).
template <class T>
Rat telescoped_rst_partial(BasicEdge<T> const & root, unsigned n, T const & D)
{
    if (D == 0)
        throw InvalidInput("telescoped_rst_partial needs D != 0");
    if (root.discriminant() != D)
        throw InvalidInput("root does not have the stated discriminant");
    auto fr = frontier(root, n);
    std::vector<Rat> terms;
    terms.reserve(fr.edges.size());
    for (auto const & e : fr.edges)
        terms.push_back(detail::crown_ratio(e));
    return (detail::crown_ratio(root) - sum_balanced(std::move(terms))) / to_rat(D);
}

/// (1/D)(sum over the crown of 1/h - 1/h0).
template <class T>
Rat telescoped_efg_partial(BasicEdge<T> const & root, unsigned n, T const & D)
{
    if (D == 0)
        throw InvalidInput("telescoped_efg_partial needs D != 0");
    if (root.h <= 0)
        throw InvalidInput("telescoped_efg_partial needs h0 > 0");
    if (root.discriminant() != D)
        throw InvalidInput("root does not have the stated discriminant");
    auto fr = frontier(root, n);
    std::vector<Rat> terms;
    terms.reserve(fr.edges.size());
    for (auto const & e : fr.edges)
        terms.push_back(detail::inverse_label(e));
    return (sum_balanced(std::move(terms)) - detail::inverse_label(root)) / to_rat(D);
}

/// D = 0: (1/6)(h0/(p0 q0)^2 - sum over the crown of h/(pq)^2).
template <class T>
Rat telescoped_rst_partial_flat(BasicEdge<T> const & root, unsigned n)
{
    if (root.discriminant() != 0)
        throw InvalidInput("telescoped_rst_partial_flat needs D = 0");
    auto term = [](BasicEdge<T> const & e) {
        Rat pq = to_rat(e.p) * to_rat(e.q);
        if (pq == 0)
            throw DivisionByZero("crown edge with zero region label");
        return to_rat(e.h) / (pq * pq);
    };
    auto fr = frontier(root, n);
    std::vector<Rat> terms;
    for (auto const & e : fr.edges)
        terms.push_back(term(e));
    return (term(root) - sum_balanced(std::move(terms))) / 6;
}

/// D = 0: (1/3)(1/h0^3 - sum over the crown of 1/h^3).
template <class T>
Rat telescoped_efg_partial_flat(BasicEdge<T> const & root, unsigned n)
{
    if (root.discriminant() != 0)
        throw InvalidInput("telescoped_efg_partial_flat needs D = 0");
    if (root.h <= 0)
        throw InvalidInput("telescoped_efg_partial_flat needs h0 > 0");
    auto term = [](BasicEdge<T> const & e) {
        Rat x = detail::inverse_label(e);
        return x * x * x;
    };
    auto fr = frontier(root, n);
    std::vector<Rat> terms;
    for (auto const & e : fr.edges)
        terms.push_back(term(e));
    return (term(root) - sum_balanced(std::move(terms))) / 3;
}

/// telescoped_rst_partial evaluated in floating point: the crown terms are
/// rounded to `prec` bits and accumulated depth-first, so depth 20 and
/// beyond stay cheap. Only the arithmetic differs from the exact version.
template <class T>
Real telescoped_rst_partial_real(BasicEdge<T> const & root, unsigned n, T const & D,
                                 unsigned prec = default_precision(), std::uint64_t budget = node_budget())
{
    if (D == 0)
        throw InvalidInput("telescoped_rst_partial_real needs D != 0");
    if (root.discriminant() != D)
        throw InvalidInput("root does not have the stated discriminant");
    check_depth_budget(n, budget);
    unsigned wp = prec + 16;
    auto ratio = [&](BasicEdge<T> const & e) {
        if (e.p == 0 || e.q == 0)
            throw DivisionByZero("crown edge with zero region label");
        return Real(e.h, wp) / (Real(e.p, wp) * Real(e.q, wp));
    };
    Real crown(0L, wp);
    std::vector<std::pair<BasicEdge<T>, unsigned>> stack{{root, 0u}};
    while (!stack.empty()) {
        auto [e, d] = std::move(stack.back());
        stack.pop_back();
        if (d == n) {
            crown += ratio(e);
            continue;
        }
        auto [l, r] = e.children();
        stack.emplace_back(std::move(r), d + 1);
        stack.emplace_back(std::move(l), d + 1);
    }
    return ((ratio(root) - crown) / Real(D, wp)).with_precision(prec);
}

/// Crown of a non-uniform truncation: an edge is expanded while
/// `expand(edge)` holds. `depth` is the deepest crown edge.
template <class T, class Pred>
BasicFrontier<T> crown_where(BasicEdge<T> const & root, Pred && expand, std::uint64_t budget = node_budget())
{
    BasicFrontier<T> out;
    std::vector<std::pair<BasicEdge<T>, unsigned>> stack{{root, 0u}};
    std::uint64_t interior = 0;
    while (!stack.empty()) {
        auto [e, d] = std::move(stack.back());
        stack.pop_back();
        if (!expand(e)) {
            out.depth = std::max(out.depth, d);
            out.edges.push_back(std::move(e));
            continue;
        }
        if (++interior > budget)
            throw ResourceLimit("crown_where: node budget exhausted");
        auto [l, r] = e.children();
        stack.emplace_back(std::move(r), d + 1);
        stack.emplace_back(std::move(l), d + 1);
    }
    return out;
}

/// D = 0 partials over the truncation that expands every edge whose crown
/// ratio h/(pq) exceeds delta. The omitted subtrees are worth (h/pq)^3/24
/// each, so the shortfall is at most delta^2/24 times the root ratio.
template <class T>
Rat telescoped_rst_partial_flat_refined(BasicEdge<T> const & root, Rat const & delta, unsigned * depth = nullptr)
{
    if (root.discriminant() != 0)
        throw InvalidInput("telescoped_rst_partial_flat_refined needs D = 0");
    if (!is_climbing(root) || delta <= 0)
        throw InvalidInput("needs a climbing root and delta > 0");
    auto term = [](BasicEdge<T> const & e) {
        Rat pq = to_rat(e.p) * to_rat(e.q);
        return to_rat(e.h) / (pq * pq);
    };
    auto fr = crown_where(root, [&](BasicEdge<T> const & e) { return detail::crown_ratio(e) > delta; });
    if (depth)
        *depth = fr.depth;
    std::vector<Rat> terms;
    for (auto const & e : fr.edges)
        terms.push_back(term(e));
    return (term(root) - sum_balanced(std::move(terms))) / 6;
}

/// Edge-sum analogue: expands while 1/h > delta.
template <class T>
Rat telescoped_efg_partial_flat_refined(BasicEdge<T> const & root, Rat const & delta, unsigned * depth = nullptr)
{
    if (root.discriminant() != 0)
        throw InvalidInput("telescoped_efg_partial_flat_refined needs D = 0");
    if (!is_climbing(root) || root.h <= 0 || delta <= 0)
        throw InvalidInput("needs a climbing root with h0 > 0 and delta > 0");
    auto term = [](BasicEdge<T> const & e) {
        Rat x = detail::inverse_label(e);
        return x * x * x;
    };
    auto fr = crown_where(root, [&](BasicEdge<T> const & e) { return detail::inverse_label(e) > delta; });
    if (depth)
        *depth = fr.depth;
    std::vector<Rat> terms;
    for (auto const & e : fr.edges)
        terms.push_back(term(e));
    return (term(root) - sum_balanced(std::move(terms))) / 3;
}

/// Sum of 1/(r s t) over vertices of depth < n, term by term.
template <class T>
Rat direct_rst_partial(BasicEdge<T> const & root, unsigned n)
{
    std::vector<Rat> terms;
    for (auto const & st : vertices(root, n)) {
        if (st.r == 0 || st.s == 0 || st.t == 0)
            throw DivisionByZero("vertex with zero region label");
        terms.push_back(1 / (to_rat(st.r) * to_rat(st.s) * to_rat(st.t)));
    }
    return sum_balanced(std::move(terms));
}

/// Sum of 1/(e_in f g) over vertices of depth < n; e_in is the label of the
/// edge coming from the root side.
template <class T>
Rat direct_efg_partial(BasicEdge<T> const & root, unsigned n)
{
    std::vector<Rat> terms;
    for (auto const & st : vertices(root, n)) {
        T e_in = -st.e;
        if (e_in == 0 || st.f == 0 || st.g == 0)
            throw DivisionByZero("vertex with zero edge label");
        terms.push_back(1 / (to_rat(e_in) * to_rat(st.f) * to_rat(st.g)));
    }
    return sum_balanced(std::move(terms));
}

namespace detail {
inline std::string label_string(Int const & v) { return v.str(); }
inline std::string label_string(Rat const & v) { return v.str(); }
} // namespace detail

template <class T>
std::string export_json(BasicEdge<T> const & root, unsigned n)
{
    using nlohmann::ordered_json;
    using detail::label_string;
    auto fr = frontier(root, n);
    auto vs = vertices(root, n);

    ordered_json doc;
    doc["root"] = ordered_json{{"p", label_string(root.p)},
                               {"h", label_string(root.h)},
                               {"q", label_string(root.q)}};
    doc["discriminant"] = label_string(root.discriminant());
    doc["depth"] = n;
    ordered_json front = ordered_json::array();
    for (auto const & e : fr.edges)
        front.push_back({label_string(e.p), label_string(e.h), label_string(e.q)});
    doc["frontier"] = std::move(front);
    ordered_json verts = ordered_json::array();
    for (auto const & st : vs)
        verts.push_back(ordered_json{{"r", label_string(st.r)},
                                     {"s", label_string(st.s)},
                                     {"t", label_string(st.t)},
                                     {"e", label_string(st.e)},
                                     {"f", label_string(st.f)},
                                     {"g", label_string(st.g)}});
    doc["vertices"] = std::move(verts);
    return doc.dump(2) + "\n";
}

/// Vertices are v<depth>_<index>; the root edge comes in from node "root"
/// and crown edges end in leaf nodes.
template <class T>
std::string export_dot(BasicEdge<T> const & root, unsigned n)
{
    using detail::label_string;
    check_depth_budget(n, node_budget());
    std::ostringstream out;
    out << "digraph topograph {\n";
    out << "  // discriminant " << label_string(root.discriminant()) << "\n";
    out << "  root [shape=point];\n";

    auto edge_attrs = [](BasicEdge<T> const & e) {
        return "[label=\"" + label_string(e.h) + "\", left=\"" + label_string(e.p) +
               "\", right=\"" + label_string(e.q) + "\"]";
    };
    auto name = [](unsigned depth, std::size_t i) {
        return "v" + std::to_string(depth) + "_" + std::to_string(i);
    };

    if (n == 0) {
        out << "  leaf_0 [shape=point];\n";
        out << "  root -> leaf_0 " << edge_attrs(root) << ";\n";
        out << "}\n";
        return out.str();
    }

    std::vector<BasicEdge<T>> level{root};
    out << "  root -> " << name(0, 0) << ' ' << edge_attrs(root) << ";\n";
    std::size_t leaf = 0;
    for (unsigned k = 0; k < n; ++k) {
        std::vector<BasicEdge<T>> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            auto st = vertex_star(level[i]);
            out << "  " << name(k, i) << " [label=\"" << label_string(st.r) << ","
                << label_string(st.s) << "," << label_string(st.t) << "\"];\n";
            auto kids = level[i].children();
            for (int side = 0; side < 2; ++side) {
                auto const & c = side == 0 ? kids.first : kids.second;
                std::string target;
                if (k + 1 < n) {
                    target = name(k + 1, 2 * i + side);
                } else {
                    target = "leaf_" + std::to_string(leaf++);
                    out << "  " << target << " [shape=point];\n";
                }
                out << "  " << name(k, i) << " -> " << target << ' ' << edge_attrs(c) << ";\n";
                next.push_back(c);
            }
        }
        level = std::move(next);
    }
    out << "}\n";
    return out.str();
}

} // namespace topo
