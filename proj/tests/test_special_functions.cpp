#include <random>

#include <gtest/gtest.h>

#include "topo/special_functions.hpp"

using namespace topo;

namespace {
constexpr unsigned P = 128;
Real R(long v, unsigned p = P) { return Real(v, p); }
Real Q(long a, long b, unsigned p = P) { return Real(Rat(a, b), p); }
} // namespace

TEST(Bernoulli, Values)
{
    EXPECT_EQ(bernoulli(0), 1);
    EXPECT_EQ(bernoulli(1), Rat(-1, 2));
    EXPECT_EQ(bernoulli(2), Rat(1, 6));
    EXPECT_EQ(bernoulli(3), 0);
    EXPECT_EQ(bernoulli(12), Rat(-691, 2730));
    EXPECT_THROW(bernoulli(kBernoulliMax + 1), InvalidInput);
}

TEST(Digamma, Values)
{
    Real g = Real::euler_gamma(P);
    Real lim = Real::exp2i(-118, P);
    EXPECT_LT(abs(digamma(R(1)) + g), lim);
    EXPECT_LT(abs(digamma(Q(1, 2)) + g + 2 * log(R(2))), lim);
    Real combo = 3 * digamma(Q(3, 2)) - digamma(Q(1, 2)) - log(R(3));
    EXPECT_LT(abs(combo - Real::from_string("0.9743676592890432", P)), Real(1e-15, P));
    // reflection branch
    EXPECT_LT(abs(digamma(Q(-1, 2)) - (digamma(Q(1, 2)) + R(2))), lim);
}

TEST(Digamma, Recurrence)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-20.0, 40.0);
    Real lim = Real::exp2i(-100, P);
    for (int i = 0; i < 200; ++i) {
        Real x(u(rng), P);
        if (abs(x - floor(x)) < Real(1e-6, P))
            continue;
        Real lhs = digamma(x + R(1));
        ASSERT_LT(abs(lhs - digamma(x) - R(1) / x), lim * (R(1) + abs(lhs))) << x.to_double();
    }
}

TEST(Digamma, Poles)
{
    EXPECT_THROW(digamma(R(0)), PoleError);
    EXPECT_THROW(digamma(R(-3)), PoleError);
}

TEST(TanhSinh, Polynomial)
{
    auto f = [](Real const & x) { return x * x; };
    Real v = tanh_sinh(f, R(0), R(1), Real::exp2i(-100, P));
    EXPECT_LT(abs(v - Q(1, 3)), Real::exp2i(-95, P));
}

TEST(W1, PeriodicAndEven)
{
    constexpr unsigned p = 96;
    Real a = w1(Q(3, 10, p));
    EXPECT_LT(abs(a - w1(Q(7, 10, p))), Real(1e-25, p));
    EXPECT_LT(abs(a - w1(Q(13, 10, p))), Real(1e-25, p));
    EXPECT_LT(abs(a - w1(Q(-3, 10, p))), Real(1e-25, p));
}

TEST(W1, MainIdentity)
{
    constexpr unsigned p = 96;
    for (double xd : {0.1, 0.25, 0.3, 0.45, 0.8}) {
        Real x(xd, p);
        Real res = 2 * w1(x) + log(R(4, p)) + digamma(Q(1, 2, p) + x) + digamma(Q(3, 2, p) - x);
        EXPECT_LT(abs(res), Real(1e-25, p)) << xd;
    }
}

TEST(W1, ResidueSum)
{
    constexpr unsigned p = 96;
    for (std::int64_t m : {3, 4, 6}) {
        Real s(0L, p);
        for (std::int64_t r = 1; r < m; ++r)
            if (std::gcd(r, m) == 1)
                s += w1(Real(Rat(long(r), long(m)), p));
        EXPECT_LT(abs(s - w1_sum_closed(m, p)), Real(1e-25, p)) << m;
    }
    EXPECT_THROW(w1_sum_closed(1, p), InvalidInput);
}

TEST(W1, PolesAtIntegers)
{
    EXPECT_THROW(w1(R(0)), DomainError);
    EXPECT_THROW(w1(R(2)), DomainError);
}
