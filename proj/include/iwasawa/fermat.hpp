#ifndef IWASAWA_FERMAT_HPP
#define IWASAWA_FERMAT_HPP

#include <utility>

#include <gmpxx.h>

#include "iwasawa/quadint.hpp"
#include "iwasawa/sunits.hpp"

namespace iwasawa::fermat {

/*
 * Fermat-quotient valuation delta_p(x) at a prime p | p of a split quadratic
 * field: (x p^-v)^(p-1) = 1 + p * p^delta * unit at p, v = v_p(x).
 *
 * Computed modulo p^(n+1), so only delta < n is exact. A capped value means
 * delta >= n.
 */
struct delta_value
{
    int value = 0;
    bool capped = false;

    friend bool operator==(delta_value const &, delta_value const &) = default;
};

enum class delta_method { embed, bezout };

struct delta_report
{
    delta_value delta1; // at p1
    delta_value delta2; // at p2
    /* false when the Bezout route was given x divisible by p2 */
    bool delta2_valid = true;
    unsigned long n = 0;
    delta_method method = delta_method::embed;
};

/* Truncation of the recomputation loop on capped values. */
inline constexpr unsigned long n_max = 64;

/* Residues of x at p1 and p2, precision n. */
delta_report delta_embed(quad_elem const & x, sunits::field_context const & ctx,
                         unsigned long n);

/* delta_embed, doubling n on each capped value until n_max. */
delta_report delta_embed_exact(quad_elem const & x,
                               sunits::field_context const & ctx,
                               unsigned long n);

/* Element u + v*y of (Z/p^(n+1))[y]/(y^2 - m). */
struct residue_pair
{
    mpz_class u;
    mpz_class v;
};

/*
 * Data of the p1-associate x' = U1 pi1^(n+1) + U2 pi2^(n+1) x of x, where
 * U1 pi1^(n+1) + U2 pi2^(n+1) = 1 is a Bezout relation in Q[y] reduced to
 * (Z/p^(n+1))[y]/(y^2 - m). normval = norm(x') = x mod p1^(n+1), and
 * normval^(p-1) has order p^(n - delta) in (Z/p^(n+1))^*.
 */
struct associate_witness
{
    residue_pair xprime;
    mpz_class normval;
    mpz_class order;
    residue_pair u1;
    residue_pair u2;
    mpz_class modulus;
};

/* Symbol order at p1 via the Bezout associate (p2 slot filled by swapping the
 * roles of pi1 and pi2). x must be prime to p1 and p2. */
std::pair<associate_witness, delta_report>
delta_bezout(quad_elem const & x, sunits::field_context const & ctx,
             unsigned long n);

/* order / p^n, i.e. p^-delta, as a reduced fraction 1/p^k. */
mpq_class symbol_ratio(associate_witness const & w, unsigned long p,
                       unsigned long n);

enum class dichotomy_branch { equal, capped };

/* For x with norm(x)^(p-1) = 1 mod p^(n+1): delta1 = delta2, or both >= n.
 * Throws invariant_error when neither holds. */
dichotomy_branch check_product_dichotomy(quad_elem const & x,
                                         sunits::field_context const & ctx,
                                         unsigned long n);

/* v_p(#T_k) = v_p(h) + delta_p(eps) (Leopoldt assumed). */
int torsion_valuation(sunits::field_context const & ctx, int delta_eps);

/* delta of a p-adic unit y given mod p^(n+1). */
delta_value delta_of_unit_residue(mpz_class const & y, unsigned long p,
                                  unsigned long n);

} // namespace iwasawa::fermat

#endif
