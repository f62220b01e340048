#ifndef IWASAWA_QUADINT_HPP
#define IWASAWA_QUADINT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace iwasawa {

/*
 * Element (a + b*sqrt(m)) / den of the ring of integers of Q(sqrt(m)).
 *
 * m is squarefree and > 1; den is 1 or 2, and den == 2 only when m = 1 mod 4
 * and a, b are both odd. Every constructor and operation returns this
 * canonical representative, so == is coordinate equality.
 */
class quad_elem
{
  public:
    quad_elem() = default;

    /* Validating constructor: rejects non-squarefree m, den not in {1,2} and
     * half-integers outside Z[(1+sqrt m)/2]. */
    quad_elem(mpz_class a, mpz_class b, int den, std::int64_t m);

    static quad_elem from_int(mpz_class a, std::int64_t m);

    mpz_class const & a() const { return a_; }
    mpz_class const & b() const { return b_; }
    int den() const { return den_; }
    std::int64_t m() const { return m_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }

    quad_elem conjugate() const;
    mpz_class norm() const;

    /* Sign of the real embedding sqrt(m) > 0. */
    int sign() const;

    /* log|x| and log|conjugate(x)| computed without cancellation. */
    long double log_abs() const;
    long double log_abs_conjugate() const;

    quad_elem operator-() const;

    friend quad_elem operator+(quad_elem const & x, quad_elem const & y);
    friend quad_elem operator-(quad_elem const & x, quad_elem const & y);
    friend quad_elem operator*(quad_elem const & x, quad_elem const & y);
    friend bool operator==(quad_elem const & x, quad_elem const & y) = default;

    std::string to_string() const;

  private:
    struct unchecked {};
    quad_elem(unchecked, mpz_class a, mpz_class b, int den, std::int64_t m);

    void canonicalize();

    mpz_class a_ = 0;
    mpz_class b_ = 0;
    int den_ = 1;
    std::int64_t m_ = 2;
};

std::ostream & operator<<(std::ostream & o, quad_elem const & x);

quad_elem make_elem(mpz_class a, mpz_class b, int den, std::int64_t m);

/* x^e for e >= 0, exact. */
quad_elem pow(quad_elem const & x, unsigned long e);

/* Images of an element under the two embeddings O_k -> Z/p^N,
 * sqrt(m) -> s and sqrt(m) -> -s. */
struct quad_residue
{
    mpz_class r1;
    mpz_class r2;
    mpz_class modulus;

    friend bool operator==(quad_residue const &, quad_residue const &) = default;
};

quad_residue operator*(quad_residue const & x, quad_residue const & y);

/* Square root of m modulo p^N: the Hensel lift of the smallest positive root
 * mod p, so the labelling of the two primes above p is stable across
 * precisions. The first prime p1 is the one where sqrt(m) = s. */
mpz_class hensel_sqrt(std::int64_t m, unsigned long p, unsigned long precision);

quad_residue embed(quad_elem const & x, mpz_class const & s,
                   unsigned long p, unsigned long precision);

quad_residue pow_mod(quad_elem const & x, mpz_class const & e,
                     mpz_class const & s, unsigned long p,
                     unsigned long precision);

} // namespace iwasawa

#endif
