#include "iwasawa/fermat.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <vector>

#include "iwasawa/arith.hpp"

namespace iwasawa::fermat {

namespace {

using poly = std::vector<mpq_class>; // low degree first

void trim(poly & f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

poly sub(poly const & f, poly const & g)
{
    poly r(std::max(f.size(), g.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        r[i] += f[i];
    for (std::size_t i = 0; i < g.size(); ++i)
        r[i] -= g[i];
    trim(r);
    return r;
}

poly mul(poly const & f, poly const & g)
{
    if (f.empty() || g.empty())
        return {};
    poly r(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] += f[i] * g[j];
    trim(r);
    return r;
}

std::pair<poly, poly> divmod(poly f, poly const & g)
{
    poly q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0);
    while (f.size() >= g.size() && !f.empty()) {
        std::size_t shift = f.size() - g.size();
        mpq_class coeff = f.back() / g.back();
        q[shift] = coeff;
        for (std::size_t i = 0; i < g.size(); ++i)
            f[i + shift] -= coeff * g[i];
        trim(f);
    }
    trim(q);
    return {q, f};
}

// u f + v g = 1 for coprime f, g in Q[y]
std::pair<poly, poly> bezout(poly const & f, poly const & g)
{
    poly r0 = f, r1 = g;
    poly s0 = {1}, s1 = {};
    poly t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, sub(s0, mul(q, s1)));
        t0 = std::exchange(t1, sub(t0, mul(q, t1)));
    }
    if (r0.size() != 1)
        throw invariant_error("Bezout relation: polynomials not coprime");
    mpq_class g0 = r0[0];
    for (auto & c : s0)
        c /= g0;
    for (auto & c : t0)
        c /= g0;
    return {s0, t0};
}

poly linear_poly(quad_elem const & x)
{
    poly f{mpq_class(x.a(), x.den()), mpq_class(x.b(), x.den())};
    for (auto & c : f)
        c.canonicalize();
    trim(f);
    return f;
}

poly power(poly const & f, unsigned long e)
{
    poly r{1};
    for (unsigned long i = 0; i < e; ++i)
        r = mul(r, f);
    return r;
}

struct ring
{
    mpz_class modulus;
    mpz_class m;
    unsigned long p;

    mpz_class reduce(mpq_class const & c) const
    {
        if (mpz_divisible_ui_p(c.get_den_mpz_t(), p))
            throw invariant_error("Bezout inversion failure: denominator "
                                  "divisible by p");
        return arith::mod(c.get_num() *
                              arith::inverse_mod(c.get_den(), modulus),
                          modulus);
    }

    residue_pair mul(residue_pair const & x, residue_pair const & y) const
    {
        return {arith::mod(x.u * y.u + m * x.v * y.v, modulus),
                arith::mod(x.u * y.v + x.v * y.u, modulus)};
    }

    residue_pair add(residue_pair const & x, residue_pair const & y) const
    {
        return {arith::mod(x.u + y.u, modulus), arith::mod(x.v + y.v, modulus)};
    }

    // Horner at y
    residue_pair eval(poly const & f) const
    {
        residue_pair acc{0, 0};
        for (auto it = f.rbegin(); it != f.rend(); ++it)
            acc = add(mul(acc, residue_pair{0, 1}),
                      residue_pair{reduce(*it), 0});
        return acc;
    }

    mpz_class norm(residue_pair const & x) const
    {
        return arith::mod(x.u * x.u - m * x.v * x.v, modulus);
    }
};

// associate relative to `first`, the element whose prime is targeted
std::optional<associate_witness> associate(quad_elem const & x,
                                           quad_elem const & first,
                                           quad_elem const & second,
                                           unsigned long p, unsigned long n)
{
    poly f = power(linear_poly(first), n + 1);
    poly g = power(linear_poly(second), n + 1);
    auto [u1, u2] = bezout(f, g);

    ring R{arith::pow(p, n + 1), mpz_class(static_cast<long>(x.m())), p};
    residue_pair U1 = R.eval(u1);
    residue_pair U2 = R.eval(u2);
    residue_pair A = R.eval(f);
    residue_pair B = R.eval(g);
    residue_pair X = R.eval(linear_poly(x));

    residue_pair one = R.add(R.mul(U1, A), R.mul(U2, B));
    if (one.u != 1 || one.v != 0)
        throw invariant_error("Bezout relation does not reduce to 1");

    associate_witness w;
    w.xprime = R.add(R.mul(U1, A), R.mul(R.mul(U2, B), X));
    w.normval = R.norm(w.xprime);
    if (mpz_divisible_ui_p(w.normval.get_mpz_t(), p))
        return std::nullopt;
    mpz_class y = arith::powm(w.normval, mpz_class(p - 1), R.modulus);
    w.order = arith::one_unit_order(y, p, n + 1);
    w.u1 = U1;
    w.u2 = U2;
    w.modulus = R.modulus;
    return w;
}

delta_value delta_from_order(mpz_class const & order, unsigned long p,
                             unsigned long n)
{
    int k = arith::valuation(order, p);
    if (k == 0)
        return {static_cast<int>(n), true};
    return {static_cast<int>(n) - k, false};
}

} // namespace

delta_value delta_of_unit_residue(mpz_class const & y, unsigned long p,
                                  unsigned long n)
{
    mpz_class modulus = arith::pow(p, n + 1);
    mpz_class z = arith::powm(y, mpz_class(p - 1), modulus) - 1;
    if (z == 0)
        return {static_cast<int>(n), true};
    return {arith::valuation(z, p) - 1, false};
}

delta_report delta_embed(quad_elem const & x, sunits::field_context const & ctx,
                         unsigned long n)
{
    if (x.is_zero())
        throw precondition_error("delta_embed: x = 0");
    if (n == 0)
        throw precondition_error("delta_embed: n must be >= 1");
    unsigned long const p = ctx.p;
    int vn = arith::valuation(x.norm(), p);
    unsigned long const k = n + 2 + static_cast<unsigned long>(vn);
    quad_residue r = embed(x, ctx.root(k), p, k);

    auto one_prime = [&](mpz_class const & res) {
        int v = arith::valuation(res, p);
        if (v == INT_MAX || v > vn)
            throw invariant_error("delta_embed: valuation exceeds v_p(norm)");
        mpz_class unit = res;
        mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(),
                     arith::pow(p, static_cast<unsigned long>(v)).get_mpz_t());
        return delta_of_unit_residue(unit, p, n);
    };
    delta_report rep;
    rep.delta1 = one_prime(r.r1);
    rep.delta2 = one_prime(r.r2);
    rep.n = n;
    rep.method = delta_method::embed;
    return rep;
}

delta_report delta_embed_exact(quad_elem const & x,
                               sunits::field_context const & ctx,
                               unsigned long n)
{
    delta_report rep = delta_embed(x, ctx, n);
    while ((rep.delta1.capped || rep.delta2.capped) && rep.n < n_max)
        rep = delta_embed(x, ctx, std::min(2 * rep.n, n_max));
    return rep;
}

std::pair<associate_witness, delta_report>
delta_bezout(quad_elem const & x, sunits::field_context const & ctx,
             unsigned long n)
{
    if (n == 0)
        throw precondition_error("delta_bezout: n must be >= 1");
    auto w1 = associate(x, ctx.pi1, ctx.pi2, ctx.p, n);
    if (!w1)
        throw precondition_error("delta_bezout: " + x.to_string() +
                                 " is not prime to p1");
    delta_report rep;
    rep.delta1 = delta_from_order(w1->order, ctx.p, n);
    rep.n = n;
    rep.method = delta_method::bezout;
    if (auto w2 = associate(x, ctx.pi2, ctx.pi1, ctx.p, n))
        rep.delta2 = delta_from_order(w2->order, ctx.p, n);
    else
        rep.delta2_valid = false;
    return {std::move(*w1), rep};
}

mpq_class symbol_ratio(associate_witness const & w, unsigned long p,
                       unsigned long n)
{
    mpq_class z(w.order, arith::pow(p, n));
    z.canonicalize();
    return z;
}

dichotomy_branch check_product_dichotomy(quad_elem const & x,
                                         sunits::field_context const & ctx,
                                         unsigned long n)
{
    mpz_class modulus = arith::pow(ctx.p, n + 1);
    if (arith::powm(arith::mod(x.norm(), modulus), mpz_class(ctx.p - 1),
                    modulus) != 1)
        throw precondition_error("check_product_dichotomy: norm^(p-1) != 1 "
                                 "mod p^(n+1)");
    delta_report rep = delta_embed(x, ctx, n);
    if (rep.delta1.capped && rep.delta2.capped)
        return dichotomy_branch::capped;
    if (rep.delta1 == rep.delta2)
        return dichotomy_branch::equal;
    throw invariant_error("product dichotomy violated for " + x.to_string() +
                          ": delta1 = " + std::to_string(rep.delta1.value) +
                          ", delta2 = " + std::to_string(rep.delta2.value));
}

int torsion_valuation(sunits::field_context const & ctx, int delta_eps)
{
    return arith::valuation(static_cast<std::int64_t>(ctx.h), ctx.p) +
           delta_eps;
}

} // namespace iwasawa::fermat
