#pragma once

// Small-integer arithmetic helpers (machine words): factoring, phi, mobius,
// divisors, and a smallest-prime-factor sieve.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "topo/errors.hpp"

namespace topo::arith {

/// (prime, exponent) pairs in increasing order; trial division.
inline std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n)
{
    if (n <= 0)
        throw InvalidInput("factor: needs n > 0");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t r = n;
    for (auto [p, k] : factor(n))
        r = r / p * (p - 1);
    return r;
}

inline int mobius(std::int64_t n)
{
    int m = 1;
    for (auto [p, k] : factor(n)) {
        if (k > 1)
            return 0;
        m = -m;
    }
    return m;
}

inline std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> ds{1};
    for (auto [p, k] : factor(n)) {
        std::size_t base = ds.size();
        std::int64_t pk = 1;
        for (int i = 0; i < k; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> ps;
    for (auto [p, k] : factor(n))
        ps.push_back(p);
    return ps;
}

/// Smallest prime factor of every n <= limit.
class SpfSieve
{
public:
    explicit SpfSieve(std::uint32_t limit) : spf_(limit + 1, 0)
    {
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (spf_[i])
                continue;
            for (std::uint64_t j = i; j <= limit; j += i)
                if (!spf_[j])
                    spf_[j] = i;
        }
    }

    std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }

    /// Adds the factorization of n (n <= limit) into `acc`, merging primes.
    void factor_into(std::uint32_t n, std::vector<std::pair<std::uint64_t, int>> & acc) const
    {
        while (n > 1) {
            std::uint32_t p = spf_[n];
            int k = 0;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            bool merged = false;
            for (auto & [q, e] : acc)
                if (q == p) {
                    e += k;
                    merged = true;
                    break;
                }
            if (!merged)
                acc.emplace_back(p, k);
        }
    }

private:
    std::vector<std::uint32_t> spf_;
};

inline std::vector<std::uint64_t> divisors_from(std::vector<std::pair<std::uint64_t, int>> const & fac)
{
    std::vector<std::uint64_t> ds{1};
    for (auto [p, k] : fac) {
        std::size_t base = ds.size();
        std::uint64_t pk = 1;
        for (int i = 0; i < k; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                ds.push_back(ds[j] * pk);
        }
    }
    return ds;
}

} // namespace topo::arith
