#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "topo/closed_forms.hpp"
#include "topo/topograph.hpp"

using namespace topo;

namespace {
OrientedEdge E(long p, long h, long q) { return {Int(p), Int(h), Int(q)}; }

/// Random climbing roots with 0 < |D| <= 500 and D of the requested sign.
std::vector<OrientedEdge> climbing_roots(int count, int dsign, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pq(1, 15), hh(1, 40);
    std::vector<OrientedEdge> out;
    while (static_cast<int>(out.size()) < count) {
        auto e = E(pq(rng), hh(rng), pq(rng));
        Int D = e.discriminant();
        if (sign(D) == dsign && abs(D) <= 500)
            out.push_back(e);
    }
    return out;
}
} // namespace

TEST(Frontier, Examples)
{
    EXPECT_EQ(frontier(E(1, 0, 1), 0).edges, std::vector<OrientedEdge>{E(1, 0, 1)});
    EXPECT_EQ(frontier(E(1, 0, 1), 1).edges, (std::vector<OrientedEdge>{E(1, 2, 2), E(2, 2, 1)}));
    EXPECT_EQ(frontier(E(1, 0, 1), 2).edges,
              (std::vector<OrientedEdge>{E(1, 4, 5), E(5, 6, 2), E(2, 6, 5), E(5, 4, 1)}));
}

TEST(Frontier, SizeAndDiscriminant)
{
    auto root = E(3, 7, 2);
    for (unsigned n = 0; n <= 10; ++n) {
        auto fr = frontier(root, n);
        EXPECT_EQ(fr.depth, n);
        ASSERT_EQ(fr.edges.size(), std::size_t(1) << n);
        for (auto const & e : fr.edges)
            ASSERT_EQ(e.discriminant(), root.discriminant());
    }
}

TEST(Frontier, BudgetIsEnforced)
{
    EXPECT_THROW(frontier(E(1, 0, 1), 11, 1024), ResourceLimit);
    EXPECT_NO_THROW(frontier(E(1, 0, 1), 10, 1024));
}

TEST(Frontier, MirrorSymmetryForSymmetricRoots)
{
    for (auto root : {E(1, 0, 1), E(2, 5, 2), E(3, 1, 3)}) {
        auto edges = frontier(root, 8).edges;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto const & a = edges[i];
            auto const & b = edges[edges.size() - 1 - i];
            ASSERT_EQ(a, (OrientedEdge{b.q, b.h, b.p}));
        }
    }
}

TEST(Frontier, MonotoneClimbing)
{
    for (int dsign : {-1, 1})
        for (auto root : climbing_roots(20, dsign, 5)) {
            Int prev_region = std::min(root.p, root.q), prev_label = root.h;
            for (unsigned n = 1; n <= 9; ++n) {
                auto fr = frontier(root, n);
                Int mr = fr.edges[0].p, ml = fr.edges[0].h;
                for (auto const & e : fr.edges) {
                    mr = std::min({mr, e.p, e.q});
                    ml = std::min(ml, e.h);
                }
                EXPECT_GE(mr, prev_region);
                EXPECT_GT(ml, prev_label);
                prev_region = mr;
                prev_label = ml;
            }
        }
}

TEST(Admissibility, Examples)
{
    auto a = is_admissible(E(1, 0, 1), Int(-4));
    EXPECT_TRUE(a.admissible);
    EXPECT_EQ(a.criterion, AdmissibilityCriterion::climbing);

    auto b = is_admissible(E(1, 3, 0), Int(9));
    EXPECT_FALSE(b.admissible);
    EXPECT_EQ(b.criterion, AdmissibilityCriterion::checked_to_depth);

    EXPECT_TRUE(is_admissible(E(1, 2, 2), Int(-4)).admissible);
}

TEST(Telescoping, WorkedExamples)
{
    EXPECT_EQ(telescoped_rst_partial(E(1, 0, 1), 1, Int(-4)), Rat(1, 2));
    EXPECT_EQ(direct_rst_partial(E(1, 0, 1), 1), Rat(1, 2));
    EXPECT_EQ(telescoped_rst_partial(E(1, 2, 2), 1, Int(-4)), Rat(1, 10));
    EXPECT_EQ(direct_rst_partial(E(1, 2, 2), 0), 0);
    EXPECT_EQ(telescoped_rst_partial(E(1, 2, 2), 2, Int(-4)), direct_rst_partial(E(1, 2, 2), 2));
    EXPECT_EQ(telescoped_efg_partial(E(1, 2, 2), 1, Int(-4)), Rat(1, 48));
    // (2,3,1): crown labels 7 and 5
    EXPECT_EQ(telescoped_efg_partial(E(2, 3, 1), 1, Int(1)), Rat(1, 7) + Rat(1, 5) - Rat(1, 3));
    EXPECT_EQ(telescoped_efg_partial(E(2, 3, 1), 1, Int(1)), direct_efg_partial(E(2, 3, 1), 1));
}

TEST(Telescoping, Errors)
{
    EXPECT_THROW(telescoped_rst_partial(E(1, 2, 1), 2, Int(0)), InvalidInput);
    EXPECT_THROW(telescoped_efg_partial(E(1, 0, 1), 2, Int(-4)), InvalidInput);
    EXPECT_THROW(telescoped_rst_partial(E(1, 3, 0), 2, Int(9)), DivisionByZero);
    EXPECT_THROW(direct_rst_partial(E(1, 3, 0), 2), DivisionByZero);
}

// Keystone property: both partial sums telescope exactly.
TEST(Telescoping, ExactOnRandomClimbingRoots)
{
    int count = 0;
    for (int dsign : {-1, 1})
        for (auto root : climbing_roots(50, dsign, 99 + dsign)) {
            Int D = root.discriminant();
            unsigned n = 1 + static_cast<unsigned>(count++ % 12);
            ASSERT_EQ(telescoped_rst_partial(root, n, D), direct_rst_partial(root, n)) << root << " n=" << n;
            ASSERT_EQ(telescoped_efg_partial(root, n, D), direct_efg_partial(root, n)) << root << " n=" << n;
        }
}

TEST(Telescoping, FlatDiscriminantExact)
{
    for (auto root : {E(1, 2, 1), E(4, 4, 1), E(1, 6, 9)})
        for (unsigned n = 0; n <= 9; ++n) {
            ASSERT_EQ(telescoped_rst_partial_flat(root, n), direct_rst_partial(root, n));
            ASSERT_EQ(telescoped_efg_partial_flat(root, n), direct_efg_partial(root, n));
        }
}

TEST(Telescoping, RationalRoots)
{
    RatEdge root{Rat(1, 2), Rat(1), Rat(1, 2)};
    for (unsigned n = 0; n <= 8; ++n)
        ASSERT_EQ(telescoped_efg_partial_flat(root, n), direct_efg_partial(root, n));
    RatEdge mu{Rat(1), Rat(2), Rat(5, 4)};
    ASSERT_EQ(telescoped_rst_partial(mu, 7, mu.discriminant()), direct_rst_partial(mu, 7));
}

TEST(Telescoping, RefinedCrownMatchesDirectOnTheSameTruncation)
{
    // with a large delta the refined crown is a full level, so both agree
    auto root = E(1, 2, 1);
    EXPECT_EQ(telescoped_rst_partial_flat_refined(root, Rat(3)), telescoped_rst_partial_flat(root, 0));
    unsigned depth = 0;
    Rat v = telescoped_rst_partial_flat_refined(root, Rat(1, 50), &depth);
    EXPECT_GT(depth, 10u);
    EXPECT_LT(v, Rat(1, 3));
    EXPECT_GT(v, Rat(1, 3) - Rat(1, 10000));
}

TEST(Telescoping, RealPartialMatchesExact)
{
    auto root = E(1, 0, 1);
    Real exact(telescoped_rst_partial(root, 10, Int(-4)), 128);
    Real fl = telescoped_rst_partial_real(root, 10, Int(-4), 128);
    EXPECT_LT(abs(exact - fl), Real::exp2i(-110, 128));
}

// The crown sum tends to (2/k) times the doubled angle; measured error
// decays like n^-3 on (1,0,1), whose boundary chains dominate.
TEST(Telescoping, CrownLimit)
{
    auto root = E(1, 0, 1);
    Real target = closed_rst(root, 128);
    Real e10 = abs(telescoped_rst_partial_real(root, 10, Int(-4), 128) - target);
    Real e20 = abs(telescoped_rst_partial_real(root, 20, Int(-4), 128) - target);
    EXPECT_LT(e20, e10);
    double order = std::log2(e10.to_double() / e20.to_double());
    EXPECT_GT(order, 2.0);
    EXPECT_LT(order, 4.0);
}

TEST(Export, JsonShape)
{
    auto j = nlohmann::json::parse(export_json(E(1, 0, 1), 1));
    EXPECT_EQ(j["discriminant"], "-4");
    EXPECT_EQ(j["depth"], 1);
    EXPECT_EQ(j["root"]["p"], "1");
    ASSERT_EQ(j["vertices"].size(), 1u);
    EXPECT_EQ(j["vertices"][0]["s"], "2");
    EXPECT_EQ(j["frontier"].size(), 2u);

    auto j0 = nlohmann::json::parse(export_json(E(1, 0, 1), 0));
    EXPECT_EQ(j0["frontier"], nlohmann::json::parse(R"([["1","0","1"]])"));
    EXPECT_TRUE(j0["vertices"].empty());

    auto j2 = nlohmann::json::parse(export_json(E(2, 5, 2), 2));
    EXPECT_EQ(j2["vertices"].size(), 3u);
    for (auto const & f : j2["frontier"]) {
        OrientedEdge e{Int(f[0].get<std::string>()), Int(f[1].get<std::string>()), Int(f[2].get<std::string>())};
        EXPECT_EQ(e.discriminant(), 9);
    }
}

TEST(Export, ByteStable)
{
    EXPECT_EQ(export_json(E(2, 5, 2), 3), export_json(E(2, 5, 2), 3));
    EXPECT_EQ(export_dot(E(2, 5, 2), 3), export_dot(E(2, 5, 2), 3));
    auto dot = export_dot(E(1, 0, 1), 1);
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("label="), std::string::npos);
    EXPECT_THROW(export_json(E(1, 0, 1), 40), ResourceLimit);
}
