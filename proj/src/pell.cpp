#include "iwasawa/pell.hpp"

#include "iwasawa/arith.hpp"

namespace iwasawa::pell {

cf_data expand_omega(std::int64_t m)
{
    if (m <= 1 || !arith::is_squarefree(m))
        throw precondition_error("m = " + std::to_string(m) +
                                 " is not a squarefree integer > 1");

    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), mpz_class(static_cast<long>(m)).get_mpz_t());
    std::int64_t const isqrt = root.get_si();

    // complete quotient (P + sqrt m) / Q with Q | m - P^2
    bool const half = (m % 4 == 1);
    std::int64_t const q0 = half ? 2 : 1;
    std::int64_t P = half ? 1 : 0;
    std::int64_t Q = q0;

    cf_data cf;
    // convergent seeds p_{-2}/q_{-2} = 0/1, p_{-1}/q_{-1} = 1/0
    mpz_class p_prev = 0, p_cur = 1;
    mpz_class q_prev = 1, q_cur = 0;
    for (;;) {
        std::int64_t a = (P + isqrt) / Q;
        cf.partial_quotients.push_back(a);

        mpz_class p_next = a * p_cur + p_prev;
        mpz_class q_next = a * q_cur + q_prev;
        p_prev = std::exchange(p_cur, std::move(p_next));
        q_prev = std::exchange(q_cur, std::move(q_next));
        cf.convergents.emplace_back(p_cur, q_cur);

        P = a * Q - P;
        Q = (m - P * P) / Q;
        if (Q == q0)
            return cf;
    }
}

quad_elem fundamental_unit(std::int64_t m)
{
    cf_data cf = expand_omega(m);
    auto const & [p, q] = cf.convergents.back();
    if (m % 4 == 1) {
        // eps = (p - q) + q (1 + sqrt m)/2 = (2p - q + q sqrt m)/2
        return make_elem(2 * p - q, q, 2, m);
    }
    return make_elem(p, q, 1, m);
}

} // namespace iwasawa::pell
