#ifndef IWASAWA_GREENBERG_HPP
#define IWASAWA_GREENBERG_HPP

#include <cstdint>
#include <vector>

#include "iwasawa/fermat.hpp"
#include "iwasawa/quadint.hpp"
#include "iwasawa/sunits.hpp"

namespace iwasawa::greenberg {

/*
 * Outcome of the sufficient test for lambda = mu = 0 on (Q(sqrt m), p):
 * the p-class group must be generated by the class of p1 (tested as
 * v_p(h) = v_p(h0)), and one of the norm-residue symbols of eps, pi2 (and so
 * every pi2 * eps^j) must generate the symbol group.
 *
 * z_eps = p^-z_eps_exp and z_pi = p^-z_pi_exp are the table values at
 * precision n0 (exponent capped at n0). delta_eps / delta_pi are the exact
 * valuations (delta_pi at p1).
 */
struct verdict
{
    std::int64_t m = 0;
    unsigned long p = 0;
    unsigned long n0 = 0;
    long h = 0;
    long h0 = 0;
    int v_p_h = 0;
    int delta_eps = 0;
    int delta_pi = 0;
    int z_eps_exp = 0;
    int z_pi_exp = 0;
    bool class_ok = false;
    bool normic_ok = false;
    bool resolved = false;
    int torsion_v = 0;
    quad_elem eps;
    quad_elem pi1;

    friend bool operator==(verdict const &, verdict const &) = default;
};

verdict check_field(sunits::field_context const & ctx, unsigned long n0);
verdict check_field(std::int64_t m, unsigned long p, unsigned long n0);

/* normic test on a context with pi2 replaced by an arbitrary generator of
 * p2^h0 (used to check invariance under unit changes). */
bool normic_test(sunits::field_context const & ctx, quad_elem const & pi2,
                 unsigned long n0);

struct scan_result
{
    unsigned long p = 0;
    long c1 = 0; // eligible m
    long c2 = 0; // resolved m
    std::vector<verdict> rows;
};

/* m in [m_min, m_max], squarefree, p split; rows in increasing m whatever the
 * worker count (0 = hardware concurrency). */
scan_result scan_range(unsigned long p, std::int64_t m_min, std::int64_t m_max,
                       unsigned long n0, unsigned workers = 0);

bool eligible(std::int64_t m, unsigned long p);

} // namespace iwasawa::greenberg

#endif
