#ifndef IWASAWA_KERNELS_HPP
#define IWASAWA_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace iwasawa::kernels {

enum class isa { scalar, avx2 };

/* Best instruction set available at run time. Setting IWASAWA_FORCE_SCALAR
 * in the environment pins it to scalar. */
isa active_isa();
bool isa_available(isa which);
char const * isa_name(isa which);

/*
 * Small odd primes used to presieve an arithmetic progression, padded to a
 * multiple of 8 lanes. `step_mod[i]` is the progression step mod q[i].
 */
struct sieve_primes
{
    std::vector<std::uint32_t> q;
    std::vector<std::uint32_t> step_mod;
    std::uint64_t step = 0;
    std::uint32_t largest = 0;
};

inline constexpr unsigned max_sieve_primes = 128;

/* The first `count` (<= max_sieve_primes) odd primes other than `skip`, for progression step `step`. */
sieve_primes make_sieve_primes(std::uint64_t step, unsigned count,
                               std::uint64_t skip);

/*
 * keep[i] = 1 when start + i*ps.step has no factor among the sieve primes,
 * 0 otherwise, for i < count. Values not above ps.largest must be tested
 * by the caller directly.
 */
void presieve(std::uint64_t start, std::size_t count, sieve_primes const & ps,
              std::uint8_t * keep, isa which);

/* Bits of classify_density codes. */
enum density_bits : std::uint8_t {
    norm_unit = 1,      // p does not divide norm(y)
    norm_one = 2,       // norm(y)^(p-1) = 1 mod p^2
    delta1_zero = 4,    // y^(p-1) != 1 mod p1^2
    delta2_zero = 8,    // y^(p-1) != 1 mod p2^2
};

/*
 * y = a*sqrt(m) + b for each sample. s is the root of m mod q = p^2, and
 * p^2 < 2^26. codes[i] gets the density_bits of sample i. Components with
 * p | y at a prime report delta*_zero as 0.
 */
void classify_density(std::uint32_t const * a, std::uint32_t const * b,
                      std::size_t count, std::uint32_t p, std::uint32_t s,
                      std::uint8_t * codes, isa which);

namespace detail {
void presieve_scalar(std::uint64_t start, std::size_t count,
                     sieve_primes const & ps, std::uint8_t * keep);
void presieve_avx2(std::uint64_t start, std::size_t count,
                   sieve_primes const & ps, std::uint8_t * keep);
void classify_density_scalar(std::uint32_t const * a, std::uint32_t const * b,
                             std::size_t count, std::uint32_t p,
                             std::uint32_t s, std::uint8_t * codes);
void classify_density_avx2(std::uint32_t const * a, std::uint32_t const * b,
                           std::size_t count, std::uint32_t p, std::uint32_t s,
                           std::uint8_t * codes);
} // namespace detail

} // namespace iwasawa::kernels

#endif
