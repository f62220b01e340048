#ifndef IWASAWA_PELL_HPP
#define IWASAWA_PELL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "iwasawa/quadint.hpp"

namespace iwasawa::pell {

/* One period of the continued fraction of omega = sqrt(m) (m != 1 mod 4) or
 * (1 + sqrt(m))/2 (m = 1 mod 4), starting at the integer part. */
struct cf_data
{
    std::vector<std::int64_t> partial_quotients;
    std::vector<std::pair<mpz_class, mpz_class>> convergents;
};

/* Expand omega until the complete quotient first returns to denominator
 * Q0 (1 or 2). The last convergent then yields the fundamental unit. */
cf_data expand_omega(std::int64_t m);

/* Fundamental unit eps > 1 of the maximal order of Q(sqrt m). */
quad_elem fundamental_unit(std::int64_t m);

} // namespace iwasawa::pell

#endif
