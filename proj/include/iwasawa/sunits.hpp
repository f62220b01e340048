#ifndef IWASAWA_SUNITS_HPP
#define IWASAWA_SUNITS_HPP

#include <cstdint>

#include <gmpxx.h>

#include "iwasawa/quadint.hpp"

namespace iwasawa::sunits {

/*
 * Everything attached to a real quadratic field k = Q(sqrt m) and an odd prime
 * p = p1 p2 split in k. p1 is the prime where sqrt(m) = s (see hensel_sqrt).
 * pi1 generates p1^h0, h0 the order of the class of p1; pi2 = conj(pi1).
 */
struct field_context
{
    std::int64_t m = 0;
    mpz_class D;
    unsigned long p = 0;
    long h = 0;
    quad_elem eps;
    unsigned long precision = 0;
    mpz_class s;
    long h0 = 0;
    quad_elem pi1;
    quad_elem pi2;

    /* Canonical root of m modulo p^k, compatible with s. */
    mpz_class root(unsigned long k) const;
};

/* Default working precision: n0 + 1 with n0 = 8. */
inline constexpr unsigned long default_precision = 9;

field_context build_context(std::int64_t m, unsigned long p,
                            unsigned long precision = default_precision);

} // namespace iwasawa::sunits

#endif
