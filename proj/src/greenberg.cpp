#include "iwasawa/greenberg.hpp"

#include <algorithm>
#include <optional>

#include "iwasawa/arith.hpp"
#include "iwasawa/parallel.hpp"

namespace iwasawa::greenberg {

bool normic_test(sunits::field_context const & ctx, quad_elem const & pi2,
                 unsigned long n0)
{
    unsigned long const k = n0 + 1;
    mpz_class const root = ctx.root(k);
    auto full_order = [&](mpz_class const & r) {
        auto d = fermat::delta_of_unit_residue(r, ctx.p, n0);
        return !d.capped && d.value == 0;
    };
    quad_residue eps = embed(ctx.eps, root, ctx.p, k);
    if (full_order(eps.r1))
        return true;
    // symbols at p1 of pi2 * eps^j, j < p
    quad_residue y = embed(pi2, root, ctx.p, k);
    for (unsigned long j = 0; j < ctx.p; ++j) {
        if (full_order(y.r1))
            return true;
        y = y * eps;
    }
    return false;
}

verdict check_field(sunits::field_context const & ctx, unsigned long n0)
{
    if (n0 == 0)
        throw precondition_error("n0 must be >= 1");
    verdict v;
    v.m = ctx.m;
    v.p = ctx.p;
    v.n0 = n0;
    v.h = ctx.h;
    v.h0 = ctx.h0;
    v.v_p_h = arith::valuation(static_cast<std::int64_t>(ctx.h), ctx.p);
    v.eps = ctx.eps;
    v.pi1 = ctx.pi1;

    auto eps_table = fermat::delta_embed(ctx.eps, ctx, n0);
    auto pi_table = fermat::delta_embed(ctx.pi2, ctx, n0);
    v.z_eps_exp = eps_table.delta1.value;
    v.z_pi_exp = pi_table.delta1.value;

    auto eps_exact = fermat::delta_embed_exact(ctx.eps, ctx, n0);
    // pi2 is only looked at on p1
    auto pi_exact = pi_table;
    while (pi_exact.delta1.capped && pi_exact.n < fermat::n_max)
        pi_exact = fermat::delta_embed(ctx.pi2, ctx,
                                       std::min(2 * pi_exact.n, fermat::n_max));
    v.delta_eps = eps_exact.delta1.value;
    v.delta_pi = pi_exact.delta1.value;

    v.class_ok = v.v_p_h == arith::valuation(static_cast<std::int64_t>(ctx.h0),
                                             ctx.p);
    v.normic_ok = normic_test(ctx, ctx.pi2, n0);
    v.resolved = v.class_ok && v.normic_ok;
    v.torsion_v = fermat::torsion_valuation(ctx, v.delta_eps);
    return v;
}

verdict check_field(std::int64_t m, unsigned long p, unsigned long n0)
{
    return check_field(sunits::build_context(m, p, n0 + 1), n0);
}

bool eligible(std::int64_t m, unsigned long p)
{
    return m > 1 && arith::is_squarefree(m) &&
           arith::kronecker(mpz_class(static_cast<long>(m)), mpz_class(p)) ==
               1;
}

scan_result scan_range(unsigned long p, std::int64_t m_min, std::int64_t m_max,
                       unsigned long n0, unsigned workers)
{
    if (p == 2 || !arith::is_prime(mpz_class(p)))
        throw precondition_error("p = " + std::to_string(p) +
                                 " is not an odd prime");
    if (n0 == 0)
        throw precondition_error("n0 must be >= 1");
    std::vector<std::int64_t> ms;
    for (std::int64_t m = std::max<std::int64_t>(m_min, 2); m <= m_max; ++m) {
        if (eligible(m, p))
            ms.push_back(m);
    }

    std::vector<std::optional<verdict>> slots(ms.size());
    parallel::for_each_index(ms.size(), workers, [&](std::size_t i) {
        slots[i] = check_field(ms[i], p, n0);
    });

    scan_result out;
    out.p = p;
    out.rows.reserve(ms.size());
    for (auto & v : slots) {
        ++out.c1;
        if (v->resolved)
            ++out.c2;
        out.rows.push_back(std::move(*v));
    }
    return out;
}

} // namespace iwasawa::greenberg
