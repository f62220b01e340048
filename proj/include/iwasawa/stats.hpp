#ifndef IWASAWA_STATS_HPP
#define IWASAWA_STATS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "iwasawa/kernels.hpp"

namespace iwasawa::stats {

struct scan_params
{
    std::int64_t m = 0;
    unsigned long p = 0;
    unsigned long n = 0;
    std::uint64_t bound = 0;
    unsigned rmax = 5;

    friend bool operator==(scan_params const &, scan_params const &) = default;
};

/*
 * Distribution of delta over generators of split primes l. counts[r] for
 * r < rmax is #{delta = r}, counts[rmax] is #{delta >= rmax}; total is the
 * number of split primes seen (N_L), skipped those whose prime above l is
 * not principal.
 */
struct stat_tally
{
    scan_params params;
    std::uint64_t total = 0;
    std::uint64_t skipped = 0;
    std::vector<std::uint64_t> counts;
    std::vector<double> expected;

    std::vector<double> proportions() const;

    friend bool operator==(stat_tally const &, stat_tally const &) = default;
};

/* (p^(d-1) - 1) / p^((r+1)(d-1)) for r < rmax, tail 1/p^(rmax (d-1)) last. */
std::vector<double> expected_proportions(unsigned long p, unsigned d,
                                         unsigned rmax);

/*
 * Scans primes 1 < l < bound with l^(p-1) = 1 mod p^(n+1) and
 * kronecker(m, l) = 1; for each takes the normalized generator alpha of the
 * prime above l (see qforms::represent) and buckets delta_p(alpha) at p1.
 * Requires p not dividing h, rmax <= n and bound < 2^63.
 */
stat_tally prime_fermat_scan(std::int64_t m, unsigned long p, unsigned long n,
                             std::uint64_t bound, unsigned rmax,
                             unsigned workers = 0,
                             kernels::isa which = kernels::active_isa());

enum class density_mode { norm, free };

struct density_result
{
    std::int64_t m = 0;
    unsigned long p = 0;
    density_mode mode = density_mode::norm;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0; // accepted samples requested
    std::uint64_t trials = 0;
    std::uint64_t accepted = 0;
    std::uint64_t hits = 0;
    std::optional<double> density;
    double expected = 0;

    friend bool operator==(density_result const &,
                           density_result const &) = default;
};

/* Range of the random coordinates: a, b uniform in [0, coord_bound). */
inline constexpr std::uint32_t coord_bound = 1000000;

/*
 * Draws y = a*sqrt(m) + b until `samples` are accepted.
 *   norm: accept norm(y)^(p-1) = 1 mod p^2; hit when delta(y) = 0 at both
 *         primes. Expected (p-1)/p.
 *   free: accept p not dividing norm(y); hit when min(delta1, delta2) = 0.
 *         Expected (p^2-1)/p^2.
 * Sample i is a function of (seed, i) only.
 */
density_result random_elem_density(std::int64_t m, unsigned long p,
                                   std::uint64_t samples, density_mode mode,
                                   std::uint64_t seed,
                                   kernels::isa which = kernels::active_isa());

/* Coordinates (a, b) of trial i. */
std::pair<std::uint32_t, std::uint32_t> random_coords(std::uint64_t seed,
                                                      std::uint64_t i);

} // namespace iwasawa::stats

#endif
