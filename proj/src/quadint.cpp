#include "iwasawa/quadint.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "iwasawa/arith.hpp"

namespace iwasawa {

namespace {

long double to_ld(mpz_class const & x)
{
    // mpz_get_d_2exp keeps the exponent for values beyond double range.
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

long double log_abs_mpz(mpz_class const & x)
{
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(std::fabs(static_cast<long double>(mant))) +
           static_cast<long double>(exp) * std::log(2.0L);
}

void require_same_field(quad_elem const & x, quad_elem const & y)
{
    if (x.m() != y.m())
        throw precondition_error("operands from different fields Q(sqrt " +
                                 std::to_string(x.m()) + ") and Q(sqrt " +
                                 std::to_string(y.m()) + ")");
}

} // namespace

quad_elem::quad_elem(mpz_class a, mpz_class b, int den, std::int64_t m)
    : a_(std::move(a)), b_(std::move(b)), den_(den), m_(m)
{
    if (m <= 1 || !arith::is_squarefree(m))
        throw precondition_error("m = " + std::to_string(m) +
                                 " is not a squarefree integer > 1");
    if (den != 1 && den != 2)
        throw precondition_error("denominator must be 1 or 2");
    if (den == 2) {
        bool a_odd = mpz_odd_p(a_.get_mpz_t());
        bool b_odd = mpz_odd_p(b_.get_mpz_t());
        if (a_odd != b_odd || (a_odd && m % 4 != 1))
            throw precondition_error(
                "(" + a_.get_str() + " + " + b_.get_str() + " sqrt " +
                std::to_string(m) + ")/2 is not an algebraic integer");
    }
    canonicalize();
}

quad_elem::quad_elem(unchecked, mpz_class a, mpz_class b, int den,
                     std::int64_t m)
    : a_(std::move(a)), b_(std::move(b)), den_(den), m_(m)
{
    canonicalize();
}

quad_elem quad_elem::from_int(mpz_class a, std::int64_t m)
{
    return quad_elem(std::move(a), 0, 1, m);
}

void quad_elem::canonicalize()
{
    while (den_ > 1 && mpz_even_p(a_.get_mpz_t()) &&
           mpz_even_p(b_.get_mpz_t())) {
        a_ /= 2;
        b_ /= 2;
        den_ /= 2;
    }
}

quad_elem quad_elem::conjugate() const
{
    return quad_elem(unchecked{}, a_, -b_, den_, m_);
}

mpz_class quad_elem::norm() const
{
    mpz_class n = a_ * a_ - mpz_class(static_cast<long>(m_)) * b_ * b_;
    if (den_ == 2)
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
    return n;
}

int quad_elem::sign() const
{
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    // opposite signs: compare a^2 with m b^2
    mpz_class lhs = a_ * a_;
    mpz_class rhs = mpz_class(static_cast<long>(m_)) * b_ * b_;
    return lhs > rhs ? sa : sb;
}

long double quad_elem::log_abs() const
{
    if (is_zero())
        return -INFINITY;
    long double root = std::sqrt(static_cast<long double>(m_));
    bool same_sign = sgn(a_) * sgn(b_) >= 0;
    if (same_sign) {
        long double v = std::fabs(to_ld(a_) + to_ld(b_) * root);
        return std::log(v) - std::log(static_cast<long double>(den_));
    }
    // a + b sqrt m = norm * den^2 / (a - b sqrt m) / den
    return log_abs_mpz(norm()) - conjugate().log_abs();
}

long double quad_elem::log_abs_conjugate() const
{
    return conjugate().log_abs();
}

quad_elem quad_elem::operator-() const
{
    return quad_elem(unchecked{}, -a_, -b_, den_, m_);
}

quad_elem operator+(quad_elem const & x, quad_elem const & y)
{
    require_same_field(x, y);
    int den = std::max(x.den_, y.den_);
    mpz_class a = x.a_ * (den / x.den_) + y.a_ * (den / y.den_);
    mpz_class b = x.b_ * (den / x.den_) + y.b_ * (den / y.den_);
    return quad_elem(quad_elem::unchecked{}, std::move(a), std::move(b), den,
                     x.m_);
}

quad_elem operator-(quad_elem const & x, quad_elem const & y)
{
    return x + (-y);
}

quad_elem operator*(quad_elem const & x, quad_elem const & y)
{
    require_same_field(x, y);
    mpz_class m(static_cast<long>(x.m_));
    mpz_class a = x.a_ * y.a_ + m * x.b_ * y.b_;
    mpz_class b = x.a_ * y.b_ + x.b_ * y.a_;
    int den = x.den_ * y.den_;
    if (den == 4) {
        // the product is integral, so both coordinates are even here
        a /= 2;
        b /= 2;
        den = 2;
    }
    return quad_elem(quad_elem::unchecked{}, std::move(a), std::move(b), den,
                     x.m_);
}

std::string quad_elem::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream & operator<<(std::ostream & o, quad_elem const & x)
{
    if (x.den() == 2)
        o << "(";
    bool wrote = false;
    if (x.a() != 0 || x.b() == 0) {
        o << x.a();
        wrote = true;
    }
    if (x.b() != 0) {
        if (wrote)
            o << (x.b() < 0 ? " - " : " + ");
        else if (x.b() < 0)
            o << "-";
        mpz_class ab = abs(x.b());
        if (ab != 1)
            o << ab << "*";
        o << "sqrt(" << x.m() << ")";
    }
    if (x.den() == 2)
        o << ")/2";
    return o;
}

quad_elem make_elem(mpz_class a, mpz_class b, int den, std::int64_t m)
{
    return quad_elem(std::move(a), std::move(b), den, m);
}

quad_elem pow(quad_elem const & x, unsigned long e)
{
    quad_elem result = quad_elem::from_int(1, x.m());
    quad_elem base = x;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

quad_residue operator*(quad_residue const & x, quad_residue const & y)
{
    if (x.modulus != y.modulus)
        throw precondition_error("residues modulo different powers of p");
    return {arith::mod(x.r1 * y.r1, x.modulus),
            arith::mod(x.r2 * y.r2, x.modulus), x.modulus};
}

mpz_class hensel_sqrt(std::int64_t m, unsigned long p, unsigned long precision)
{
    if (precision == 0)
        throw precondition_error("hensel_sqrt: precision must be >= 1");
    mpz_class mz(static_cast<long>(m));
    mpz_class pz(p);
    if (p == 2 || !arith::is_prime(pz))
        throw precondition_error("hensel_sqrt: p must be an odd prime");
    if (arith::kronecker(mz, pz) != 1)
        throw precondition_error("p = " + std::to_string(p) +
                                 " does not split in Q(sqrt " +
                                 std::to_string(m) + ")");
    auto m_mod_p = static_cast<arith::u64>(arith::mod(mz, pz).get_ui());
    mpz_class s(static_cast<unsigned long>(*arith::sqrt_mod_prime(m_mod_p, p)));

    // Newton: s <- s - (s^2 - m) / (2s), doubling the precision each step
    unsigned long k = 1;
    while (k < precision) {
        k = std::min(2 * k, precision);
        mpz_class modulus = arith::pow(p, k);
        mpz_class f = s * s - mz;
        mpz_class inv = arith::inverse_mod(2 * s, modulus);
        s = arith::mod(s - f * inv, modulus);
    }
    return s;
}

quad_residue embed(quad_elem const & x, mpz_class const & s, unsigned long p,
                   unsigned long precision)
{
    mpz_class modulus = arith::pow(p, precision);
    mpz_class bs = x.b() * s;
    mpz_class r1 = x.a() + bs;
    mpz_class r2 = x.a() - bs;
    if (x.den() == 2) {
        mpz_class inv2 = arith::inverse_mod(2, modulus);
        r1 *= inv2;
        r2 *= inv2;
    }
    return {arith::mod(r1, modulus), arith::mod(r2, modulus), modulus};
}

quad_residue pow_mod(quad_elem const & x, mpz_class const & e,
                     mpz_class const & s, unsigned long p,
                     unsigned long precision)
{
    if (e < 0)
        throw precondition_error("pow_mod: negative exponent");
    quad_residue base = embed(x, s, p, precision);
    return {arith::powm(base.r1, e, base.modulus),
            arith::powm(base.r2, e, base.modulus), base.modulus};
}

} // namespace iwasawa
