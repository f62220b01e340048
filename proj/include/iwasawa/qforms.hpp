#ifndef IWASAWA_QFORMS_HPP
#define IWASAWA_QFORMS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "iwasawa/quadint.hpp"

namespace iwasawa::qforms {

/* 2x2 integer matrix acting on column vectors (x, y). */
struct matrix2
{
    mpz_class m00 = 1, m01 = 0, m10 = 0, m11 = 1;

    mpz_class det() const { return m00 * m11 - m01 * m10; }
    friend bool operator==(matrix2 const &, matrix2 const &) = default;
};

matrix2 operator*(matrix2 const & x, matrix2 const & y);

/*
 * Indefinite binary quadratic form a x^2 + b xy + c y^2 with non-square
 * discriminant D = b^2 - 4ac > 0.
 *
 * When `transform` is set it holds T with f_source(T v) = f(v), i.e. the
 * matrix that carries the form it was attached to onto the current one.
 */
class indef_form
{
  public:
    indef_form(mpz_class a, mpz_class b, mpz_class c);

    mpz_class const & a() const { return a_; }
    mpz_class const & b() const { return b_; }
    mpz_class const & c() const { return c_; }
    mpz_class const & discriminant() const { return disc_; }
    /* floor(sqrt(D)) */
    mpz_class const & root() const { return root_; }

    std::optional<matrix2> const & transform() const { return transform_; }
    indef_form with_transform() const;
    indef_form without_transform() const;

    /* 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b */
    bool is_reduced() const;

    /* Value at (x, y). */
    mpz_class operator()(mpz_class const & x, mpz_class const & y) const;

    /* Coefficient-wise equality; the transform is ignored. */
    bool same_coefficients(indef_form const & g) const
    {
        return a_ == g.a_ && b_ == g.b_ && c_ == g.c_;
    }

    /* One reduction step (a, b, c) -> (c, b', a'), b' = -b mod 2c. */
    indef_form rho() const;

    /* (-a, b, -c) */
    indef_form negated() const;

  private:
    indef_form(mpz_class a, mpz_class b, mpz_class c, mpz_class disc,
               mpz_class root, std::optional<matrix2> t);

    mpz_class a_, b_, c_;
    mpz_class disc_, root_;
    std::optional<matrix2> transform_;
};

std::ostream & operator<<(std::ostream & o, indef_form const & f);

/* D = m when m = 1 mod 4, 4m otherwise. */
mpz_class field_discriminant(std::int64_t m);
/* Inverse of field_discriminant; throws for non-fundamental D. */
std::int64_t radicand(mpz_class const & D);
bool is_fundamental(mpz_class const & D);

indef_form reduce(indef_form const & f);

/* Reduced forms of the cycle containing reduce(f), starting there. */
std::vector<indef_form> cycle(indef_form const & f);

/* Reduced representative of the principal form of discriminant D. */
indef_form principal_form(mpz_class const & D);

/* Gauss composition followed by reduction. */
indef_form compose(indef_form const & f, indef_form const & g);

/* (a, -b, c), the class of the conjugate ideal. */
indef_form inverse(indef_form const & f);

/* Proper (SL2(Z)) equivalence. */
bool properly_equivalent(indef_form const & f, indef_form const & g);

/* True when the class of f is trivial in the ordinary class group, i.e. f is
 * equivalent to the principal form or to its negative. */
bool is_principal(indef_form const & f);

/* Every reduced form of discriminant D (fundamental, D < 2^52). */
std::vector<indef_form> reduced_forms(mpz_class const & D);

/* Number of cycles of reduced forms: the narrow class number. */
long narrow_class_number(mpz_class const & D);

/* Ordinary class number h; equals the narrow one when the fundamental unit
 * has norm -1, half of it otherwise. */
long class_number(mpz_class const & D);

/* Form of the ideal q1^k = [q^k, (b + sqrt D)/2] with q an odd prime split
 * in Q(sqrt m), labelled so that sqrt(m) = hensel_sqrt(m, q, k) mod q1^k. */
indef_form prime_power_form(mpz_class const & D, unsigned long q,
                            unsigned long k = 1);

inline indef_form prime_form(mpz_class const & D, unsigned long q)
{
    return prime_power_form(D, q, 1);
}

/* Order of the class of f in the ordinary class group; h must be a multiple
 * of it (normally class_number(D)). */
long class_order(indef_form const & f, long h);

/* Generator alpha of the ideal [a, (b + sqrt D)/2] of f (a > 0), so
 * |norm(alpha)| = a, or nullopt when that ideal is not principal. Walks the
 * reduction transform to the principal cycle. No unit normalization. */
std::optional<quad_elem> ideal_generator(indef_form const & f);

/* Associate of alpha with alpha > 0 and |alpha / conj(alpha)| in
 * [1/eps, eps), eps the fundamental unit. */
quad_elem normalize_generator(quad_elem const & alpha, quad_elem const & eps);

/* Normalized generator of q1^k (see prime_power_form), nullopt when the
 * class is not principal. */
std::optional<quad_elem> represent(mpz_class const & D, unsigned long q,
                                   unsigned long k, quad_elem const & eps);

/* Same, for a target +-q^k given as an integer. */
std::optional<quad_elem> represent(mpz_class const & D,
                                   mpz_class const & target,
                                   quad_elem const & eps);

} // namespace iwasawa::qforms

#endif
