// Compiled with -mavx2 -mfma; only reached after the runtime check.

#include <immintrin.h>

#include "symsplit/kernels.hpp"

namespace symsplit::kernels::avx2 {

namespace {

// Coordinate j of four consecutive rows.
inline __m256d column(const double* rows, int j)
{
    return _mm256_set_pd(rows[18 + j], rows[12 + j], rows[6 + j], rows[j]);
}

} // namespace

void quad_form_batch(const double* G, const double* vecs, std::size_t n, double* out)
{
    std::size_t r = 0;
    for (; r + 4 <= n; r += 4) {
        const double* x = vecs + 6 * r;
        __m256d c[6];
        for (int j = 0; j < 6; ++j) c[j] = column(x, j);
        __m256d s = _mm256_setzero_pd();
        for (int i = 0; i < 6; ++i) {
            __m256d t = _mm256_setzero_pd();
            for (int j = 0; j < 6; ++j) t = _mm256_fmadd_pd(_mm256_set1_pd(G[6 * i + j]), c[j], t);
            s = _mm256_fmadd_pd(c[i], t, s);
        }
        _mm256_storeu_pd(out + r, s);
    }
    if (r < n) scalar::quad_form_batch(G, vecs + 6 * r, n - r, out + r);
}

void embedding_norms_batch(const double* emb, const double* vecs, std::size_t n, double* sq, double* norm)
{
    std::size_t r = 0;
    for (; r + 4 <= n; r += 4) {
        const double* x = vecs + 6 * r;
        __m256d c[6];
        for (int j = 0; j < 6; ++j) c[j] = column(x, j);
        __m256d prod = _mm256_set1_pd(1.0);
        alignas(32) double a[3][4];
        for (int k = 0; k < 3; ++k) {
            __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
            for (int i = 0; i < 6; ++i) {
                re = _mm256_fmadd_pd(c[i], _mm256_set1_pd(emb[(k * 6 + i) * 2]), re);
                im = _mm256_fmadd_pd(c[i], _mm256_set1_pd(emb[(k * 6 + i) * 2 + 1]), im);
            }
            __m256d v = _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im));
            _mm256_store_pd(a[k], v);
            prod = _mm256_mul_pd(prod, v);
        }
        for (int t = 0; t < 4; ++t)
            for (int k = 0; k < 3; ++k) sq[3 * (r + t) + k] = a[k][t];
        _mm256_storeu_pd(norm + r, prod);
    }
    if (r < n) scalar::embedding_norms_batch(emb, vecs + 6 * r, n - r, sq + 3 * r, norm + r);
}

} // namespace symsplit::kernels::avx2
