#include "iwasawa/kernels.hpp"

#include <immintrin.h>

namespace iwasawa::kernels::detail {

/*
 * Residues of the candidate modulo 8 primes per register; each step adds
 * step mod q and folds back once. Lanes never exceed 2q < 2^31, so signed
 * compares are safe.
 */
void presieve_avx2(std::uint64_t start, std::size_t count,
                   sieve_primes const & ps, std::uint8_t * keep)
{
    std::size_t const nv = ps.q.size() / 8;
    __m256i res[max_sieve_primes / 8], qv[max_sieve_primes / 8],
        qm1[max_sieve_primes / 8], st[max_sieve_primes / 8];
    for (std::size_t v = 0; v < nv; ++v) {
        alignas(32) std::uint32_t r[8];
        for (int l = 0; l < 8; ++l)
            r[l] = static_cast<std::uint32_t>(start % ps.q[8 * v + l]);
        res[v] = _mm256_load_si256(reinterpret_cast<__m256i const *>(r));
        qv[v] = _mm256_loadu_si256(
            reinterpret_cast<__m256i const *>(ps.q.data() + 8 * v));
        qm1[v] = _mm256_sub_epi32(qv[v], _mm256_set1_epi32(1));
        st[v] = _mm256_loadu_si256(
            reinterpret_cast<__m256i const *>(ps.step_mod.data() + 8 * v));
    }
    __m256i const zero = _mm256_setzero_si256();
    for (std::size_t i = 0; i < count; ++i) {
        __m256i hit = zero;
        for (std::size_t v = 0; v < nv; ++v) {
            hit = _mm256_or_si256(hit, _mm256_cmpeq_epi32(res[v], zero));
            __m256i r = _mm256_add_epi32(res[v], st[v]);
            __m256i over = _mm256_cmpgt_epi32(r, qm1[v]);
            res[v] = _mm256_sub_epi32(r, _mm256_and_si256(over, qv[v]));
        }
        keep[i] = _mm256_testz_si256(hit, hit) ? 1 : 0;
    }
}

namespace {

/* x mod q for 0 <= x < 2^52, exact after the two fix-ups. */
inline __m256d fmod_exact(__m256d x, __m256d q)
{
    __m256d k = _mm256_floor_pd(_mm256_div_pd(x, q));
    __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(k, q));
    __m256d zero = _mm256_setzero_pd();
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), q));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, q, _CMP_GE_OQ), q));
    return r;
}

inline __m256d mulmod(__m256d x, __m256d y, __m256d q)
{
    return fmod_exact(_mm256_mul_pd(x, y), q);
}

inline __m256d powmod(__m256d x, std::uint32_t e, __m256d q)
{
    __m256d r = _mm256_set1_pd(1.0);
    while (e) {
        if (e & 1)
            r = mulmod(r, x, q);
        x = mulmod(x, x, q);
        e >>= 1;
    }
    return r;
}

inline __m256d load4(std::uint32_t const * x)
{
    return _mm256_cvtepi32_pd(
        _mm_loadu_si128(reinterpret_cast<__m128i const *>(x)));
}

} // namespace

void classify_density_avx2(std::uint32_t const * a, std::uint32_t const * b,
                           std::size_t count, std::uint32_t p, std::uint32_t s,
                           std::uint8_t * codes)
{
    double const qd = double(p) * p;
    __m256d const q = _mm256_set1_pd(qd);
    __m256d const pv = _mm256_set1_pd(double(p));
    __m256d const sv = fmod_exact(_mm256_set1_pd(double(s)), q);
    __m256d const one = _mm256_set1_pd(1.0);
    __m256d const zero = _mm256_setzero_pd();
    std::size_t i = 0;
    // inputs are < 2^31 so the signed conversion is exact
    for (; i + 4 <= count; i += 4) {
        __m256d av = fmod_exact(load4(a + i), q);
        __m256d bv = fmod_exact(load4(b + i), q);
        __m256d as = mulmod(av, sv, q);
        __m256d r1 = fmod_exact(_mm256_add_pd(bv, as), q);
        __m256d r2 = fmod_exact(_mm256_add_pd(_mm256_sub_pd(bv, as), q), q);
        __m256d nm = mulmod(r1, r2, q);

        __m256d unit = _mm256_cmp_pd(fmod_exact(nm, pv), zero, _CMP_NEQ_OQ);
        __m256d n_one =
            _mm256_and_pd(unit, _mm256_cmp_pd(powmod(nm, p - 1, q), one,
                                              _CMP_EQ_OQ));
        __m256d u1 = _mm256_cmp_pd(fmod_exact(r1, pv), zero, _CMP_NEQ_OQ);
        __m256d u2 = _mm256_cmp_pd(fmod_exact(r2, pv), zero, _CMP_NEQ_OQ);
        __m256d d1 = _mm256_and_pd(
            u1, _mm256_cmp_pd(powmod(r1, p - 1, q), one, _CMP_NEQ_OQ));
        __m256d d2 = _mm256_and_pd(
            u2, _mm256_cmp_pd(powmod(r2, p - 1, q), one, _CMP_NEQ_OQ));

        int m_unit = _mm256_movemask_pd(unit);
        int m_one = _mm256_movemask_pd(n_one);
        int m_d1 = _mm256_movemask_pd(d1);
        int m_d2 = _mm256_movemask_pd(d2);
        for (int l = 0; l < 4; ++l) {
            codes[i + l] = static_cast<std::uint8_t>(
                ((m_unit >> l) & 1) * norm_unit | ((m_one >> l) & 1) * norm_one |
                ((m_d1 >> l) & 1) * delta1_zero |
                ((m_d2 >> l) & 1) * delta2_zero);
        }
    }
    if (i < count)
        classify_density_scalar(a + i, b + i, count - i, p, s, codes + i);
}

} // namespace iwasawa::kernels::detail
