#include "symsplit/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace symsplit::kernels {

namespace {

Isa detect()
{
    const char* force = std::getenv("SYMSPLIT_FORCE_SCALAR");
    if (force && std::strcmp(force, "0") != 0 && *force) return Isa::Scalar;
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

Isa& current()
{
    static Isa isa = detect();
    return isa;
}

} // namespace

bool avx2_available()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() { return current(); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool set_isa(Isa isa)
{
    if (isa == Isa::Avx2 && !avx2_available()) return false;
    current() = isa;
    return true;
}

void quad_form_batch(const double* G, const double* vecs, std::size_t n, double* out)
{
    if (current() == Isa::Avx2) avx2::quad_form_batch(G, vecs, n, out);
    else scalar::quad_form_batch(G, vecs, n, out);
}

void embedding_norms_batch(const double* emb, const double* vecs, std::size_t n, double* sq, double* norm)
{
    if (current() == Isa::Avx2) avx2::embedding_norms_batch(emb, vecs, n, sq, norm);
    else scalar::embedding_norms_batch(emb, vecs, n, sq, norm);
}

namespace scalar {

void quad_form_batch(const double* G, const double* vecs, std::size_t n, double* out)
{
    for (std::size_t r = 0; r < n; ++r) {
        const double* x = vecs + 6 * r;
        double s = 0;
        for (int i = 0; i < 6; ++i) {
            double t = 0;
            for (int j = 0; j < 6; ++j) t += G[6 * i + j] * x[j];
            s += x[i] * t;
        }
        out[r] = s;
    }
}

void embedding_norms_batch(const double* emb, const double* vecs, std::size_t n, double* sq, double* norm)
{
    for (std::size_t r = 0; r < n; ++r) {
        const double* x = vecs + 6 * r;
        double prod = 1;
        for (int k = 0; k < 3; ++k) {
            double re = 0, im = 0;
            for (int i = 0; i < 6; ++i) {
                re += x[i] * emb[(k * 6 + i) * 2];
                im += x[i] * emb[(k * 6 + i) * 2 + 1];
            }
            double a = re * re + im * im;
            sq[3 * r + k] = a;
            prod *= a;
        }
        norm[r] = prod;
    }
}

} // namespace scalar

} // namespace symsplit::kernels
