#pragma once

// Bernoulli numbers, digamma, a tanh-sinh quadrature, and the auxiliary
// integral W1(x) = 2 int_0^inf Re( y / ((y^2+1)(exp(pi(y + 2ix)) - 1)) ) dy.

#include <cmath>
#include <cstdint>
#include <vector>

#include "topo/arith.hpp"
#include "topo/errors.hpp"
#include "topo/numeric.hpp"

namespace topo {

inline constexpr int kBernoulliMax = 62;

/// B_0 .. B_62 (B_1 = -1/2), computed once.
inline std::vector<Rat> const & bernoulli_table()
{
    static std::vector<Rat> const table = [] {
        std::vector<Rat> b(kBernoulliMax + 1);
        b[0] = 1;
        for (int m = 1; m <= kBernoulliMax; ++m) {
            Rat acc = 0;
            Int binom = 1; // C(m+1, k)
            for (int k = 0; k < m; ++k) {
                acc += Rat(binom) * b[k];
                binom = binom * (m + 1 - k) / (k + 1);
            }
            b[m] = -acc / (m + 1);
        }
        return b;
    }();
    return table;
}

inline Rat bernoulli(int n)
{
    if (n < 0 || n > kBernoulliMax)
        throw InvalidInput("bernoulli: index out of cached range");
    return bernoulli_table()[n];
}

namespace detail {
inline bool is_nonpositive_integer(Real const & x)
{
    return x.sign() <= 0 && floor(x) == x;
}
} // namespace detail

/// psi(x): shift up with psi(x+1) = psi(x) + 1/x, then the asymptotic series
/// through B_60; reflection for x < 0.
inline Real digamma(Real const & x)
{
    if (detail::is_nonpositive_integer(x))
        throw PoleError("digamma: pole at non-positive integer");
    unsigned prec = x.precision();
    unsigned wp = prec + 32;
    Real y = x.with_precision(wp);
    Real acc(0L, wp);

    if (y.sign() < 0) {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        Real pi = Real::pi(wp);
        Real arg = pi * y;
        acc -= pi * cos(arg) / sin(arg);
        y = Real(1L, wp) - y;
    }

    static double const log2_b62 = std::log2(std::fabs(to_double(bernoulli(62))) / 62.0);
    double xmin = std::max(10.0, std::exp2((log2_b62 + wp) / 62.0));
    Real lim(xmin, wp);
    while (y < lim) {
        acc -= Real(1L, wp) / y;
        y += Real(1L, wp);
    }

    Real inv2 = Real(1L, wp) / (y * y);
    Real s = log(y) - Real(1L, wp) / (Real(2L, wp) * y);
    Real pw = inv2;
    for (int k = 1; k <= 30; ++k) {
        s -= Real(bernoulli(2 * k), wp) / Real(long(2 * k), wp) * pw;
        pw *= inv2;
    }
    return (s + acc).with_precision(prec);
}

/// Double-exponential quadrature of f over [a, b]. Levels are refined
/// until two consecutive estimates differ by at most tol.
template <class F>
Real tanh_sinh(F && f, Real const & a, Real const & b, Real const & tol, int max_level = 12)
{
    unsigned prec = std::max(a.precision(), b.precision());
    Real half = (b - a) / Real(2L, prec);
    Real mid = (a + b) / Real(2L, prec);
    Real halfpi = Real::pi(prec) / Real(2L, prec);
    double tmax = std::asinh(prec * std::log(2.0) / M_PI + 2.0);

    auto point = [&](Real const & t) {
        Real u = halfpi * sinh(t);
        Real ch = cosh(u);
        Real w = half * halfpi * cosh(t) / (ch * ch);
        return w * f(mid + half * (sinh(u) / ch));
    };

    Real step(1L, prec);
    Real sum = point(Real(0L, prec));
    for (int j = 1; j <= static_cast<int>(std::ceil(tmax)); ++j) {
        Real t(long(j), prec);
        sum += point(t) + point(-t);
    }
    Real estimate = sum * step;

    for (int level = 1; level <= max_level; ++level) {
        step /= Real(2L, prec);
        long count = static_cast<long>(std::ceil(tmax * std::ldexp(1.0, level)));
        for (long j = 1; j <= count; j += 2) {
            Real t = Real(j, prec) * step;
            sum += point(t) + point(-t);
        }
        Real next = sum * step;
        Real diff = abs(next - estimate);
        estimate = next;
        if (level >= 3 && diff <= tol)
            return estimate;
    }
    throw QuadratureFailure("tanh_sinh: tolerance not reached");
}

/// W1(x); 1-periodic and even. Poles at integers.
inline Real w1(Real const & x)
{
    unsigned prec = x.precision();
    unsigned wp = prec + 24;
    Real fx = x.with_precision(wp);
    fx -= floor(fx);
    if (fx.is_zero())
        throw DomainError("w1: pole at integer x");
    Real pi = Real::pi(wp);
    Real c = cos(2 * pi * fx);

    auto integrand = [&](Real const & y) {
        Real u = exp(-(pi * y));
        Real num = c * u - u * u;
        Real den = Real(1L, wp) - 2 * c * u + u * u;
        return 2 * y / (y * y + Real(1L, wp)) * num / den;
    };

    double ymax = std::max(30.0, (prec * std::log(2.0) + 10.0) / M_PI);
    Real tol = Real::exp2i(8 - static_cast<long>(wp), wp);
    double cuts[] = {0.0, 1.0, 3.0, 8.0, ymax};
    Real total(0L, wp);
    for (int i = 0; i + 1 < 5; ++i)
        total += tanh_sinh(integrand, Real(cuts[i], wp), Real(cuts[i + 1], wp), tol);
    return total.with_precision(prec);
}

/// Closed form of the sum of W1(r/m) over 1 <= r < m, gcd(r, m) = 1.
inline Real w1_sum_closed(std::int64_t m, unsigned prec = default_precision())
{
    if (m < 2)
        throw InvalidInput("w1_sum_closed: needs m > 1");
    Real phi(long(arith::euler_phi(m)), prec);
    Real mm(long(m), prec);
    Real primes(0L, prec);
    for (auto p : arith::prime_divisors(m))
        primes += log(Real(long(p), prec)) / Real(long(p - 1), prec);
    Real psi_sum(0L, prec);
    for (auto d : arith::divisors(m)) {
        int mu = arith::mobius(d);
        if (mu == 0)
            continue;
        Real term = digamma(mm / Real(long(2 * d), prec)) / Real(long(d), prec);
        psi_sum += mu > 0 ? term : -term;
    }
    return phi * log(mm / Real(2L, prec)) + phi * primes - mm * psi_sum;
}

} // namespace topo
