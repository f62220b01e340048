#include "iwasawa/stats.hpp"

#include <algorithm>
#include <cmath>

#include "iwasawa/arith.hpp"
#include "iwasawa/fermat.hpp"
#include "iwasawa/parallel.hpp"
#include "iwasawa/qforms.hpp"
#include "iwasawa/sunits.hpp"

namespace iwasawa::stats {

std::vector<double> stat_tally::proportions() const
{
    std::vector<double> out(counts.size(), 0.0);
    if (total == 0)
        return out;
    for (std::size_t r = 0; r < counts.size(); ++r)
        out[r] = static_cast<double>(counts[r]) / static_cast<double>(total);
    return out;
}

std::vector<double> expected_proportions(unsigned long p, unsigned d,
                                         unsigned rmax)
{
    if (d < 2)
        throw precondition_error("expected_proportions: d must be >= 2");
    long double const base = std::pow(static_cast<long double>(p), d - 1);
    std::vector<double> out;
    for (unsigned r = 0; r < rmax; ++r)
        out.push_back(static_cast<double>((base - 1) / std::pow(base, r + 1)));
    out.push_back(static_cast<double>(1 / std::pow(base, rmax)));
    return out;
}

namespace {

constexpr std::uint64_t block_size = 1 << 14;
constexpr unsigned sieve_count = 64;

struct work_item
{
    std::uint64_t first; // first candidate
    std::uint64_t count;
};

struct partial
{
    std::uint64_t total = 0;
    std::uint64_t skipped = 0;
    std::vector<std::uint64_t> counts;
};

} // namespace

stat_tally prime_fermat_scan(std::int64_t m, unsigned long p, unsigned long n,
                             std::uint64_t bound, unsigned rmax,
                             unsigned workers, kernels::isa which)
{
    if (n == 0)
        throw precondition_error("prime_fermat_scan: n must be >= 1");
    if (rmax > n)
        throw precondition_error("prime_fermat_scan: rmax must not exceed n");
    if (bound >= (std::uint64_t(1) << 63))
        throw precondition_error("prime_fermat_scan: bound must be below 2^63");
    auto ctx = sunits::build_context(m, p, n + 1);
    if (arith::valuation(static_cast<std::int64_t>(ctx.h), p) != 0)
        throw precondition_error("prime_fermat_scan: p divides h = " +
                                 std::to_string(ctx.h));

    stat_tally tally;
    tally.params = {m, p, n, bound, rmax};
    tally.counts.assign(rmax + 1, 0);
    tally.expected = expected_proportions(p, 2, rmax);

    mpz_class const M = arith::pow(p, n + 1);
    if (!M.fits_ulong_p() || M.get_ui() >= bound)
        return tally;
    std::uint64_t const step = M.get_ui();

    // classes rho^(k p^n), the (p-1)-th roots of unity mod p^(n+1)
    mpz_class const g =
        arith::powm(arith::primitive_root(p, n + 1), arith::pow(p, n), M);
    std::vector<std::uint64_t> classes;
    mpz_class r = 1;
    for (unsigned long k = 1; k < p; ++k) {
        r = arith::mod(r * g, M);
        classes.push_back(r.get_ui());
    }
    std::sort(classes.begin(), classes.end());

    std::vector<work_item> items;
    for (std::uint64_t c : classes) {
        std::uint64_t first = c > 1 ? c : c + step;
        if (first >= bound)
            continue;
        std::uint64_t total = (bound - 1 - first) / step + 1;
        for (std::uint64_t j = 0; j < total; j += block_size)
            items.push_back({first + j * step, std::min(block_size, total - j)});
    }

    auto const ps = kernels::make_sieve_primes(step, sieve_count, p);
    mpz_class const root = ctx.root(n + 1);
    mpz_class const mz(static_cast<long>(m));

    std::vector<partial> parts(items.size());
    parallel::for_each_index(items.size(), workers, [&](std::size_t idx) {
        work_item const & it = items[idx];
        partial & out = parts[idx];
        out.counts.assign(rmax + 1, 0);
        std::vector<std::uint8_t> keep(it.count);
        kernels::presieve(it.first, it.count, ps, keep.data(), which);
        for (std::uint64_t i = 0; i < it.count; ++i) {
            std::uint64_t ell = it.first + i * step;
            if (!keep[i] && ell > ps.largest)
                continue;
            if (!arith::is_prime(static_cast<arith::u64>(ell)))
                continue;
            mpz_class ellz(static_cast<unsigned long>(ell));
            if (arith::kronecker(mz, ellz) != 1)
                continue;
            ++out.total;
            auto alpha = qforms::represent(ctx.D, ell, 1, ctx.eps);
            if (!alpha) {
                ++out.skipped;
                continue;
            }
            if (abs(alpha->norm()) != ellz)
                throw invariant_error("generator of norm " +
                                      alpha->norm().get_str() + " above " +
                                      std::to_string(ell));
            quad_residue res = embed(*alpha, root, p, n + 1);
            auto d1 = fermat::delta_of_unit_residue(res.r1, p, n);
            auto d2 = fermat::delta_of_unit_residue(res.r2, p, n);
            if (!(d1 == d2))
                throw invariant_error("product dichotomy violated for " +
                                      alpha->to_string());
            unsigned bucket = std::min<unsigned>(
                static_cast<unsigned>(d1.value), rmax);
            ++out.counts[bucket];
        }
    });

    for (auto const & part : parts) {
        tally.total += part.total;
        tally.skipped += part.skipped;
        for (unsigned b = 0; b <= rmax; ++b)
            tally.counts[b] += part.counts[b];
    }
    return tally;
}

std::pair<std::uint32_t, std::uint32_t> random_coords(std::uint64_t seed,
                                                      std::uint64_t i)
{
    // splitmix64 on (seed, i)
    std::uint64_t z = seed + (i + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    auto scale = [](std::uint32_t x) {
        return static_cast<std::uint32_t>((std::uint64_t(x) * coord_bound) >>
                                          32);
    };
    return {scale(static_cast<std::uint32_t>(z >> 32)),
            scale(static_cast<std::uint32_t>(z))};
}

density_result random_elem_density(std::int64_t m, unsigned long p,
                                   std::uint64_t samples, density_mode mode,
                                   std::uint64_t seed, kernels::isa which)
{
    if (m <= 1 || !arith::is_squarefree(m))
        throw precondition_error("m = " + std::to_string(m) +
                                 " is not a squarefree integer > 1");
    if (p == 2 || !arith::is_prime(mpz_class(p)))
        throw precondition_error("p = " + std::to_string(p) +
                                 " is not an odd prime");
    if (p >= 8192)
        throw precondition_error("random_elem_density: p must be below 8192");
    mpz_class const s = hensel_sqrt(m, p, 2);

    density_result out;
    out.m = m;
    out.p = p;
    out.mode = mode;
    out.seed = seed;
    out.samples = samples;
    double const pd = static_cast<double>(p);
    out.expected = mode == density_mode::norm ? (pd - 1) / pd
                                              : (pd * pd - 1) / (pd * pd);
    if (samples == 0)
        return out;

    constexpr std::size_t batch = 4096;
    std::vector<std::uint32_t> a(batch), b(batch);
    std::vector<std::uint8_t> codes(batch);
    std::uint64_t next = 0;
    while (out.accepted < samples) {
        for (std::size_t j = 0; j < batch; ++j)
            std::tie(a[j], b[j]) = random_coords(seed, next + j);
        kernels::classify_density(a.data(), b.data(), batch,
                                  static_cast<std::uint32_t>(p),
                                  static_cast<std::uint32_t>(s.get_ui()),
                                  codes.data(), which);
        for (std::size_t j = 0; j < batch && out.accepted < samples; ++j) {
            std::uint8_t c = codes[j];
            ++out.trials;
            bool accept, hit;
            if (mode == density_mode::norm) {
                accept = (c & kernels::norm_unit) && (c & kernels::norm_one);
                hit = (c & kernels::delta1_zero) && (c & kernels::delta2_zero);
                bool one_sided = !(c & kernels::delta1_zero) !=
                                 !(c & kernels::delta2_zero);
                if (accept && one_sided)
                    throw invariant_error(
                        "product dichotomy violated for sample " +
                        std::to_string(next + j));
            } else {
                accept = c & kernels::norm_unit;
                hit = (c & kernels::delta1_zero) || (c & kernels::delta2_zero);
            }
            if (!accept)
                continue;
            ++out.accepted;
            if (hit)
                ++out.hits;
        }
        next += batch;
    }
    out.density = static_cast<double>(out.hits) /
                  static_cast<double>(out.accepted);
    return out;
}

} // namespace iwasawa::stats
