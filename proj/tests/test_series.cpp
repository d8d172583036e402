#include <gtest/gtest.h>

#include "topo/closed_forms.hpp"
#include "topo/series.hpp"

using namespace topo;

namespace {
constexpr unsigned P = 128;
OrientedEdge E(long p, long h, long q) { return {Int(p), Int(h), Int(q)}; }
Real T(double v) { return Real(v, P); }
} // namespace

TEST(PrunedSum, RegionSumsMatchClosedForms)
{
    struct Case { OrientedEdge root; long D; };
    for (auto c : {Case{E(1, 0, 1), -4}, Case{E(1, 2, 2), -4}, Case{E(2, 3, 1), 1}, Case{E(1, 2, 1), 0},
                   Case{E(3, 1, 3), -35}}) {
        Real tol = T(1e-8);
        auto r = sum_rst(c.root, Int(c.D), tol, P);
        EXPECT_LE(r.error_bound, tol) << c.root;
        EXPECT_GE(r.error_bound.sign(), 0);
        EXPECT_LT(abs(r.value - closed_rst(c.root, P)), tol) << c.root;
    }
    EXPECT_LT(abs(sum_rst(E(1, 0, 1), Int(-4), T(1e-8), P).value - Real::pi(P) / Real(4L, P)), T(1e-8));
}

TEST(PrunedSum, EdgeSumsMatchClosedForms)
{
    struct Case { OrientedEdge root; long D; };
    for (auto c : {Case{E(1, 2, 2), -4}, Case{E(3, 10, 3), 64}, Case{E(1, 4, 2), 8}, Case{E(1, 2, 1), 0}}) {
        Real tol = T(1e-8);
        auto r = sum_efg(c.root, Int(c.D), tol, P);
        EXPECT_LE(r.error_bound, tol) << c.root;
        EXPECT_LT(abs(r.value - closed_efg(c.root, P)), tol) << c.root;
    }
    Real want = Real(Rat(1, 8), P) - Real::pi(P) / Real(32L, P);
    EXPECT_LT(abs(sum_efg(E(1, 2, 2), Int(-4), T(1e-8), P).value - want), T(1e-8));
}

TEST(PrunedSum, RationalRoot)
{
    RatEdge root{Rat(1), Rat(2), Rat(5, 4)};
    auto r = sum_rst(root, root.discriminant(), T(1e-7), P);
    EXPECT_LT(abs(r.value - closed_rst(root, P)), T(1e-7));
}

TEST(PrunedSum, RejectsBadInput)
{
    EXPECT_THROW(sum_rst(E(1, 0, 1), Int(-3), T(1e-6), P), InvalidInput);
    EXPECT_THROW(sum_rst(E(1, 0, 1), Int(-4), T(0), P), InvalidInput);
}

TEST(Flat, UnimodularCompletion)
{
    for (std::int64_t a = 1; a <= 40; ++a)
        for (std::int64_t c = 1; c <= 40; ++c) {
            if (std::gcd(a, c) != 1)
                continue;
            auto [b, d] = unimodular_completion(a, c);
            ASSERT_EQ(a * d - b * c, 1) << a << ',' << c;
            ASSERT_GE(b, 0);
            ASSERT_LE(b, a);
            ASSERT_GE(d, 0);
            ASSERT_LE(d, c);
        }
    EXPECT_THROW(unimodular_completion(4, 6), InvalidInput);
}

TEST(Flat, BoundIsRigorous)
{
    for (std::int64_t M : {50, 200}) {
        auto r = flat_sum_to(FlatSeries::mordell_tornheim, Rat(0), M, P);
        EXPECT_EQ(r.bound, BoundKind::rigorous);
        EXPECT_LE(abs(r.value - Real(Rat(1, 3), P)), r.error_bound) << M;
    }
}

TEST(NamedSeries, AgreeWithExpectedOnBothRoutes)
{
    Real tol = T(1e-6);
    SeriesParams p;
    for (auto const & id : series_ids()) {
        Real want = expected_value(id, p, P);
        auto r = named_series(id, p, tol, P);
        EXPECT_GE(r.error_bound.sign(), 0) << id;
        EXPECT_LT(abs(r.value - want), tol) << id;
        if (r.bound == BoundKind::rigorous) {
            EXPECT_LE(abs(r.value - want), r.error_bound + T(1e-30)) << id;
        }
        if (auto alt = named_series_alternate(id, p, tol, P)) {
            EXPECT_LT(abs(alt->value - want), tol) << id << " (alternate)";
            EXPECT_LT(abs(alt->value - r.value), 2 * tol) << id;
        }
    }
}

TEST(NamedSeries, MuIHalfValue)
{
    EXPECT_LT(abs(expected_value("mu_i_half", {}, P) - T(0.0073350)), T(5e-8));
}

TEST(NamedSeries, EulerGammaConsistency)
{
    SeriesParams p;
    p.N = 20000;
    Real a = (named_series("hata", p, T(1e-8), P).value + Real(1L, P)) / Real(2L, P);
    Real b = (Real(7L, P) - named_series("hata_second", p, T(1e-7), P).value) / Real(12L, P);
    EXPECT_LT(abs(a - Real::euler_gamma(P)), T(1e-8));
    EXPECT_LT(abs(a - b), T(1e-7));
}

TEST(NamedSeries, MuFamilyAcrossMu)
{
    for (Rat mu : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
        SeriesParams p;
        p.mu = mu;
        Real want = expected_value("mu_family", p, P);
        EXPECT_LT(abs(named_series("mu_family", p, T(1e-9), P).value - want), T(1e-9)) << mu;
        EXPECT_LT(abs(flat_sum(FlatSeries::mu_family, mu, T(1e-7), P).value - want), T(1e-7)) << mu;
    }
}

// Small-mu expansion 1/3 - (2/5) mu^2 + (3/7) mu^4 - ..., read off by
// Richardson extrapolation of flat sums at mu = 1/8 and 1/4.
TEST(NamedSeries, MuFamilyExpansionCoefficients)
{
    auto c = [](Rat mu) {
        Real s = flat_sum(FlatSeries::mu_family, mu, T(1e-10), P).value;
        return (s - Real(Rat(1, 3), P)) / Real(Rat(mu * mu), P);
    };
    EXPECT_LT(abs(flat_sum(FlatSeries::mu_family, Rat(1, 1000), T(1e-8), P).value - Real(Rat(1, 3), P)),
              T(1e-6));
    Real c8 = c(Rat(1, 8)), c4 = c(Rat(1, 4));
    Real mu2 = (4 * c8 - c4) / Real(3L, P);
    EXPECT_LT(abs(mu2 + Real(Rat(2, 5), P)), T(1e-3));
    Real mu4 = (c4 - c8) / Real(Rat(3, 64), P);
    EXPECT_LT(abs(mu4 - Real(Rat(3, 7), P)), T(0.05));
    Real coef = named_series("mu2_coefficient", {}, T(1e-7), P).value;
    EXPECT_LT(abs(coef - Real(Rat(2, 5), P)), T(1e-7));
}

TEST(NamedSeries, Unknown)
{
    EXPECT_THROW(named_series("nope", {}, T(1e-6), P), UnknownSeries);
    EXPECT_THROW(expected_value("nope"), UnknownSeries);
    SeriesParams bad;
    bad.mu = Rat(-1);
    EXPECT_THROW(named_series("mu_family", bad, T(1e-6), P), InvalidInput);
}

TEST(NamedSeries, FullTopographForOtherForms)
{
    SeriesParams p;
    p.form = QuadraticForm{Int(2), Int(1), Int(3)};
    auto r = named_series("full_topograph_neg", p, T(1e-9), P);
    EXPECT_LT(abs(r.value - expected_value("full_topograph_neg", p, P)), T(1e-9));
}
