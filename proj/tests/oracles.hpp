#ifndef IWASAWA_TESTS_ORACLES_HPP
#define IWASAWA_TESTS_ORACLES_HPP

/*
 * Brute-force reference computations. Nothing here calls into the library
 * except for plain data types; each routine is the naive definition.
 */

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline bool is_square(u64 n, u64 * root = nullptr)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    if (root)
        *root = r;
    return r * r == n;
}

inline bool squarefree(i64 n)
{
    for (i64 d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0)
            return false;
    return n > 1;
}

inline bool prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/* Smallest unit > 1 of the maximal order written (x + y sqrt m)/2 with
 * x^2 - m y^2 = +-4, scanning y = 1..limit. Returns (x, y). */
inline std::optional<std::pair<u64, u64>> smallest_unit(i64 m, u64 limit)
{
    for (u64 y = 1; y <= limit; ++y) {
        u64 my2 = static_cast<u64>(m) * y * y;
        u64 x;
        for (int sign : {-1, 1}) {
            if (sign < 0 && my2 < 4)
                continue;
            u64 t = sign < 0 ? my2 - 4 : my2 + 4;
            if (is_square(t, &x) && (x % 2 == y % 2) &&
                (m % 4 == 1 || (x % 2 == 0)))
                return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

/* Number of (wide, narrow) classes of primitive forms of discriminant D,
 * by enumerating every reduced form and following the reduction operator
 * on 64-bit integers. */
struct form
{
    i64 a, b, c;
    friend bool operator<(form const & x, form const & y)
    {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    }
    friend bool operator==(form const & x, form const & y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

inline i64 gcd(i64 a, i64 b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/* Reduced in Gauss' sense: |sqrt D - 2|a|| < b < sqrt D. */
inline bool reduced(form const & f, i64 D)
{
    long double r = std::sqrt(static_cast<long double>(D));
    long double a2 = 2.0L * static_cast<long double>(f.a < 0 ? -f.a : f.a);
    return f.b > 0 && f.b < r && std::fabs(r - a2) < f.b;
}

/* (a, b, c) -> (c, b', a') with b' = -b mod 2c chosen in the reduced window. */
inline form rho(form const & f, i64 D)
{
    i64 c = f.c, ac = c < 0 ? -c : c;
    long double r = std::sqrt(static_cast<long double>(D));
    i64 b = -f.b;
    // pick b' = -b mod 2|c| with r - 2|c| < b' < r
    i64 m2 = 2 * ac;
    i64 k = static_cast<i64>(std::floor((r - b) / m2));
    i64 bp = b + k * m2;
    while (bp > r)
        bp -= m2;
    while (bp <= r - m2)
        bp += m2;
    return {c, bp, (bp * bp - D) / (4 * c)};
}

inline std::pair<long, long> class_numbers(i64 D)
{
    std::vector<form> all;
    for (i64 b = 1; b * b < D; ++b) {
        if ((b * b - D) % 4 != 0)
            continue;
        i64 ac = (b * b - D) / 4; // negative
        for (i64 a = 1; a <= -ac; ++a) {
            if (ac % a != 0)
                continue;
            for (i64 s : {1, -1}) {
                form f{s * a, b, ac / (s * a)};
                if (gcd(gcd(f.a, f.b), f.c) == 1 && reduced(f, D))
                    all.push_back(f);
            }
        }
    }
    std::map<form, int> cycle_of;
    int cycles = 0;
    for (auto const & f : all) {
        if (cycle_of.count(f))
            continue;
        form g = f;
        do {
            cycle_of[g] = cycles;
            g = rho(g, D);
        } while (!(g == f));
        ++cycles;
    }
    // wide classes: merge the cycle of f with the cycle of -f
    std::set<std::pair<int, int>> merged;
    for (auto const & [f, id] : cycle_of) {
        int other = cycle_of.at(form{-f.a, f.b, -f.c});
        merged.insert({std::min(id, other), std::max(id, other)});
    }
    return {static_cast<long>(merged.size()), cycles};
}

inline u64 mulmod(u64 a, u64 b, u64 n)
{
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n);
}

inline u64 powmod(u64 x, u64 e, u64 n)
{
    u64 r = 1 % n;
    x %= n;
    while (e) {
        if (e & 1)
            r = mulmod(r, x, n);
        x = mulmod(x, x, n);
        e >>= 1;
    }
    return r;
}

/* All square roots of a modulo n, by exhaustion. */
inline std::vector<u64> sqrts(i64 a, u64 n)
{
    u64 am = static_cast<u64>(((a % static_cast<i64>(n)) + static_cast<i64>(n)) %
                              static_cast<i64>(n));
    std::vector<u64> out;
    for (u64 x = 0; x < n; ++x)
        if (mulmod(x, x, n) == am)
            out.push_back(x);
    return out;
}

/* delta of a unit residue y mod p^(n+1), or n when y^(p-1) = 1. */
inline int delta_residue(u64 y, u64 p, int n)
{
    u64 mod = 1;
    for (int i = 0; i <= n; ++i)
        mod *= p;
    u64 z = (powmod(y, p - 1, mod) + mod - 1) % mod;
    if (z == 0)
        return n;
    int v = 0;
    while (z % p == 0) {
        z /= p;
        ++v;
    }
    return v - 1;
}

} // namespace oracle

#endif
