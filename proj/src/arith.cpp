#include "iwasawa/arith.hpp"

#include <array>
#include <climits>
#include <cstdlib>

namespace iwasawa::arith {

namespace {

constexpr std::array<u64, 12> mr_bases = {2, 3, 5, 7, 11, 13,
                                          17, 19, 23, 29, 31, 37};

bool mr_witness_passes(u64 n, u64 d, int r, u64 a)
{
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace

u64 powmod(u64 base, u64 e, u64 n)
{
    u64 result = 1 % n;
    base %= n;
    while (e) {
        if (e & 1)
            result = mulmod(result, base, n);
        base = mulmod(base, base, n);
        e >>= 1;
    }
    return result;
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 q : mr_bases) {
        if (n % q == 0)
            return n == q;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : mr_bases) {
        if (!mr_witness_passes(n, d, r, a))
            return false;
    }
    return true;
}

bool is_prime(mpz_class const & n)
{
    if (n < 2)
        return false;
    if (mpz_fits_ulong_p(n.get_mpz_t()))
        return is_prime(static_cast<u64>(n.get_ui()));
    static mpz_class const deterministic_limit("3317044064679887385961981");
    if (n >= deterministic_limit)
        return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
    for (u64 q : mr_bases) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), q))
            return false;
    }
    mpz_class nm1 = n - 1;
    mpz_class d = nm1;
    int r = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++r;
    }
    for (u64 a : mr_bases) {
        mpz_class x = powm(mpz_class(static_cast<unsigned long>(a)), d, n);
        if (x == 1 || x == nm1)
            continue;
        bool ok = false;
        for (int i = 1; i < r && !ok; ++i) {
            x = x * x % n;
            ok = (x == nm1);
        }
        if (!ok)
            return false;
    }
    return true;
}

bool is_squarefree(std::int64_t n)
{
    if (n == 0)
        return false;
    u64 v = static_cast<u64>(std::llabs(n));
    for (u64 q = 2; q * q <= v; ++q) {
        if (v % q == 0) {
            v /= q;
            if (v % q == 0)
                return false;
        }
    }
    return true;
}

int kronecker(mpz_class const & a, mpz_class const & b)
{
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

std::optional<u64> sqrt_mod_prime(u64 a, u64 q)
{
    a %= q;
    if (a == 0)
        return 0;
    if (q == 2)
        return a;
    if (powmod(a, (q - 1) / 2, q) != 1)
        return std::nullopt;

    u64 root;
    if (q % 4 == 3) {
        root = powmod(a, (q + 1) / 4, q);
    } else {
        // Tonelli-Shanks
        u64 s = q - 1;
        int e = 0;
        while ((s & 1) == 0) {
            s >>= 1;
            ++e;
        }
        u64 z = 2;
        while (powmod(z, (q - 1) / 2, q) != q - 1)
            ++z;
        u64 c = powmod(z, s, q);
        u64 x = powmod(a, (s + 1) / 2, q);
        u64 t = powmod(a, s, q);
        int mm = e;
        while (t != 1) {
            int i = 0;
            u64 tt = t;
            while (tt != 1) {
                tt = mulmod(tt, tt, q);
                ++i;
            }
            u64 b = c;
            for (int j = 0; j < mm - i - 1; ++j)
                b = mulmod(b, b, q);
            x = mulmod(x, b, q);
            c = mulmod(b, b, q);
            t = mulmod(t, c, q);
            mm = i;
        }
        root = x;
    }
    return std::min(root, q - root);
}

int valuation(mpz_class const & x, unsigned long p)
{
    if (x == 0)
        return INT_MAX;
    mpz_class y = x;
    int v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
        ++v;
    }
    return v;
}

int valuation(std::int64_t x, unsigned long p)
{
    if (x == 0)
        return INT_MAX;
    int v = 0;
    auto q = static_cast<std::int64_t>(p);
    while (x % q == 0) {
        x /= q;
        ++v;
    }
    return v;
}

mpz_class pow(unsigned long p, unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

mpz_class inverse_mod(mpz_class const & a, mpz_class const & n)
{
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
        throw invariant_error("inverse_mod: " + a.get_str() +
                              " not invertible mod " + n.get_str());
    return r;
}

mpz_class powm(mpz_class const & base, mpz_class const & e,
               mpz_class const & n)
{
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
    return r;
}

mpz_class primitive_root(unsigned long p, unsigned long k)
{
    // A root mod p^2 that is primitive mod p stays primitive mod p^k.
    std::vector<u64> factors;
    u64 phi = p - 1;
    for (u64 q = 2; q * q <= phi; ++q) {
        if (phi % q == 0) {
            factors.push_back(q);
            while (phi % q == 0)
                phi /= q;
        }
    }
    if (phi > 1)
        factors.push_back(phi);

    for (u64 g = 2;; ++g) {
        if (g % p == 0)
            continue;
        bool primitive = true;
        for (u64 q : factors) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (!primitive)
            continue;
        if (k >= 2) {
            mpz_class p2 = pow(p, 2);
            if (powm(mpz_class(static_cast<unsigned long>(g)),
                     mpz_class(p - 1), p2) == 1)
                continue;
        }
        return mpz_class(static_cast<unsigned long>(g));
    }
}

mpz_class one_unit_order(mpz_class const & y, unsigned long p,
                         unsigned long k)
{
    mpz_class modulus = pow(p, k);
    mpz_class z = mod(y, modulus);
    mpz_class order = 1;
    while (z != 1) {
        z = powm(z, mpz_class(p), modulus);
        order *= p;
        if (order > modulus)
            throw invariant_error("one_unit_order: not a 1-unit");
    }
    return order;
}

std::vector<u64> small_primes(u64 limit)
{
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> primes;
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

std::string inverse_prime_power_string(unsigned long p, int e)
{
    if (e == 0)
        return "1";
    return "1/" + pow(p, static_cast<unsigned long>(e)).get_str();
}

} // namespace iwasawa::arith
