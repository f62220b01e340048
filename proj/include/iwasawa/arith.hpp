#ifndef IWASAWA_ARITH_HPP
#define IWASAWA_ARITH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace iwasawa {

/* Thrown when an operation is called outside its domain (non-squarefree m,
 * inert p, mismatched discriminants, ...). The CLI maps it to exit code 3. */
class precondition_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/* Thrown when an internal consistency check fails; always a bug. */
class invariant_error : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

namespace arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 n)
{
    return static_cast<u64>(static_cast<u128>(a) * b % n);
}

u64 powmod(u64 base, u64 e, u64 n);

/* Deterministic Miller-Rabin with the first twelve prime bases, exact below
 * 3.3e24; GMP's probabilistic test beyond that. */
bool is_prime(u64 n);
bool is_prime(mpz_class const & n);

bool is_squarefree(std::int64_t n);

int kronecker(mpz_class const & a, mpz_class const & b);

/* Smallest root in [0, q) of x^2 = a (mod q), q an odd prime; nullopt when a
 * is a non-residue. */
std::optional<u64> sqrt_mod_prime(u64 a, u64 q);

/* p-adic valuation; v_p(0) is reported as INT_MAX. */
int valuation(mpz_class const & x, unsigned long p);
int valuation(std::int64_t x, unsigned long p);

mpz_class pow(unsigned long p, unsigned long e);

/* Inverse of a modulo n; throws invariant_error when not invertible. */
mpz_class inverse_mod(mpz_class const & a, mpz_class const & n);

/* Least non-negative residue. */
inline mpz_class mod(mpz_class const & a, mpz_class const & n)
{
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

mpz_class powm(mpz_class const & base, mpz_class const & e,
               mpz_class const & n);

/* Generator of the cyclic group (Z/p^k)^*, p odd prime, searched from 2. */
mpz_class primitive_root(unsigned long p, unsigned long k);

/* Multiplicative order of a 1-unit y of (Z/p^k)^*, a power of p. */
mpz_class one_unit_order(mpz_class const & y, unsigned long p, unsigned long k);

std::vector<u64> small_primes(u64 limit);

/* "1", "1/3", "1/9", ... for p^(-e). */
std::string inverse_prime_power_string(unsigned long p, int e);

} // namespace arith
} // namespace iwasawa

#endif
