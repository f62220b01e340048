#include "iwasawa/kernels.hpp"

#include <cstdlib>

#include "iwasawa/arith.hpp"

namespace iwasawa::kernels {

bool isa_available(isa which)
{
    if (which == isa::scalar)
        return true;
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}

isa active_isa()
{
    static isa const chosen = [] {
        if (std::getenv("IWASAWA_FORCE_SCALAR"))
            return isa::scalar;
        return isa_available(isa::avx2) ? isa::avx2 : isa::scalar;
    }();
    return chosen;
}

char const * isa_name(isa which)
{
    return which == isa::avx2 ? "avx2" : "scalar";
}

sieve_primes make_sieve_primes(std::uint64_t step, unsigned count,
                               std::uint64_t skip)
{
    if (count > max_sieve_primes)
        throw precondition_error("make_sieve_primes: too many primes");
    sieve_primes ps;
    ps.step = step;
    for (std::uint32_t q = 3; ps.q.size() < count; q += 2) {
        if (q == skip || !arith::is_prime(static_cast<arith::u64>(q)))
            continue;
        ps.q.push_back(q);
    }
    if (ps.q.empty())
        ps.q.push_back(skip == 3 ? 5 : 3);
    ps.largest = ps.q.back();
    // pad with repeats of the first prime; duplicates do not change the mask
    while (ps.q.size() % 8 != 0)
        ps.q.push_back(ps.q.front());
    for (auto q : ps.q)
        ps.step_mod.push_back(static_cast<std::uint32_t>(step % q));
    return ps;
}

void presieve(std::uint64_t start, std::size_t count, sieve_primes const & ps,
              std::uint8_t * keep, isa which)
{
    if (which == isa::avx2 && isa_available(isa::avx2))
        detail::presieve_avx2(start, count, ps, keep);
    else
        detail::presieve_scalar(start, count, ps, keep);
}

void classify_density(std::uint32_t const * a, std::uint32_t const * b,
                      std::size_t count, std::uint32_t p, std::uint32_t s,
                      std::uint8_t * codes, isa which)
{
    if (std::uint64_t(p) * p >= (std::uint64_t(1) << 26))
        throw precondition_error("classify_density: p^2 must be below 2^26");
    if (which == isa::avx2 && isa_available(isa::avx2))
        detail::classify_density_avx2(a, b, count, p, s, codes);
    else
        detail::classify_density_scalar(a, b, count, p, s, codes);
}

} // namespace iwasawa::kernels
