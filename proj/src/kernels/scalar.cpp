#include "iwasawa/kernels.hpp"

namespace iwasawa::kernels::detail {

void presieve_scalar(std::uint64_t start, std::size_t count,
                     sieve_primes const & ps, std::uint8_t * keep)
{
    std::size_t const np = ps.q.size();
    std::vector<std::uint32_t> res(np);
    for (std::size_t j = 0; j < np; ++j)
        res[j] = static_cast<std::uint32_t>(start % ps.q[j]);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint8_t k = 1;
        for (std::size_t j = 0; j < np; ++j) {
            if (res[j] == 0)
                k = 0;
            res[j] += ps.step_mod[j];
            if (res[j] >= ps.q[j])
                res[j] -= ps.q[j];
        }
        keep[i] = k;
    }
}

namespace {

std::uint64_t powmod_small(std::uint64_t x, std::uint64_t e, std::uint64_t q)
{
    std::uint64_t r = 1 % q;
    while (e) {
        if (e & 1)
            r = r * x % q;
        x = x * x % q;
        e >>= 1;
    }
    return r;
}

} // namespace

void classify_density_scalar(std::uint32_t const * a, std::uint32_t const * b,
                             std::size_t count, std::uint32_t p,
                             std::uint32_t s, std::uint8_t * codes)
{
    std::uint64_t const q = std::uint64_t(p) * p;
    std::uint64_t const sq = s % q;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t as = (a[i] % q) * sq % q;
        std::uint64_t bq = b[i] % q;
        std::uint64_t r1 = (bq + as) % q;
        std::uint64_t r2 = (bq + q - as) % q;
        std::uint64_t nm = r1 * r2 % q;
        std::uint8_t c = 0;
        if (nm % p != 0) {
            c |= norm_unit;
            if (powmod_small(nm, p - 1, q) == 1)
                c |= norm_one;
        }
        if (r1 % p != 0 && powmod_small(r1, p - 1, q) != 1)
            c |= delta1_zero;
        if (r2 % p != 0 && powmod_small(r2, p - 1, q) != 1)
            c |= delta2_zero;
        codes[i] = c;
    }
}

} // namespace iwasawa::kernels::detail
