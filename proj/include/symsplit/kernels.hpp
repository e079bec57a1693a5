#pragma once

// Floating-point screening loops with a scalar and an AVX2/FMA variant.
// Dispatch is decided once at runtime; SYMSPLIT_FORCE_SCALAR=1 in the
// environment pins the scalar path. Results only guide searches; every
// decision is re-checked in exact arithmetic.

#include <cstddef>

namespace symsplit::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_available();
// Returns false (and keeps the current choice) when isa is not supported.
bool set_isa(Isa isa);

// out[i] = v_i^T G v_i for rows v_i of the n x 6 row-major array vecs.
void quad_form_batch(const double* G, const double* vecs, std::size_t n, double* out);

// emb is [3][6][2]: (re, im) of sigma_k(omega_i). For each row x_i of vecs:
// sq[3 i + k] = |sigma_k(x_i)|^2 and norm[i] = product over k (an approximate
// absolute norm).
void embedding_norms_batch(const double* emb, const double* vecs, std::size_t n, double* sq, double* norm);

namespace scalar {
void quad_form_batch(const double* G, const double* vecs, std::size_t n, double* out);
void embedding_norms_batch(const double* emb, const double* vecs, std::size_t n, double* sq, double* norm);
} // namespace scalar

namespace avx2 {
void quad_form_batch(const double* G, const double* vecs, std::size_t n, double* out);
void embedding_norms_batch(const double* emb, const double* vecs, std::size_t n, double* sq, double* norm);
} // namespace avx2

} // namespace symsplit::kernels
