#include "iwasawa/sunits.hpp"

#include "iwasawa/arith.hpp"
#include "iwasawa/pell.hpp"
#include "iwasawa/qforms.hpp"

namespace iwasawa::sunits {

mpz_class field_context::root(unsigned long k) const
{
    if (k == precision)
        return s;
    if (k < precision)
        return arith::mod(s, arith::pow(p, k));
    return hensel_sqrt(m, p, k);
}

field_context build_context(std::int64_t m, unsigned long p,
                            unsigned long precision)
{
    if (m <= 1 || !arith::is_squarefree(m))
        throw precondition_error("m = " + std::to_string(m) +
                                 " is not a squarefree integer > 1");
    if (p == 2 || !arith::is_prime(mpz_class(p)))
        throw precondition_error("p = " + std::to_string(p) +
                                 " is not an odd prime");
    if (m % static_cast<std::int64_t>(p) == 0)
        throw precondition_error("p = " + std::to_string(p) +
                                 " is ramified in Q(sqrt " +
                                 std::to_string(m) + ")");
    if (arith::kronecker(mpz_class(static_cast<long>(m)), mpz_class(p)) != 1)
        throw precondition_error("p = " + std::to_string(p) +
                                 " is inert in Q(sqrt " + std::to_string(m) +
                                 ")");
    if (precision == 0)
        throw precondition_error("precision must be >= 1");

    field_context ctx;
    ctx.m = m;
    ctx.D = qforms::field_discriminant(m);
    ctx.p = p;
    ctx.h = qforms::class_number(ctx.D);
    ctx.eps = pell::fundamental_unit(m);
    ctx.precision = precision;
    ctx.s = hensel_sqrt(m, p, precision);
    ctx.h0 = qforms::class_order(qforms::prime_form(ctx.D, p), ctx.h);

    auto pi = qforms::represent(ctx.D, p, static_cast<unsigned long>(ctx.h0),
                                ctx.eps);
    if (!pi)
        throw invariant_error("p1^h0 is not principal");
    ctx.pi1 = *pi;
    ctx.pi2 = ctx.pi1.conjugate();

    // p1-support: r1(pi1) has valuation h0, r2(pi1) is a unit
    quad_residue r = embed(ctx.pi1, ctx.root(ctx.h0 + 1), p, ctx.h0 + 1);
    if (arith::valuation(r.r1, p) != ctx.h0 || arith::valuation(r.r2, p) != 0)
        throw invariant_error("pi1 is not supported on p1 alone");
    return ctx;
}

} // namespace iwasawa::sunits
