// Fallback for targets without AVX2: the dispatcher never selects these,
// they only satisfy the linker.

#include "symsplit/kernels.hpp"

namespace symsplit::kernels::avx2 {

void quad_form_batch(const double* G, const double* vecs, std::size_t n, double* out)
{
    scalar::quad_form_batch(G, vecs, n, out);
}

void embedding_norms_batch(const double* emb, const double* vecs, std::size_t n, double* sq, double* norm)
{
    scalar::embedding_norms_batch(emb, vecs, n, sq, norm);
}

} // namespace symsplit::kernels::avx2
