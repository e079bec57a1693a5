#pragma once

// Dense big-integer matrices: Hermite and Smith normal forms, determinants,
// integer linear systems.

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace symsplit {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;
using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

ZMat zmat(std::size_t rows, std::size_t cols);
ZMat identity(std::size_t n);
ZMat mul(const ZMat& A, const ZMat& B);
ZVec mul(const ZVec& v, const ZMat& A); // row vector times matrix
ZMat transpose(const ZMat& A);
mpz_class det(ZMat A); // Bareiss
QMat inverse(const QMat& A);
QMat to_q(const ZMat& A);
QVec mul(const QVec& v, const QMat& A);

// Upper-triangular row HNF of a lattice L in Z^n that contains D * Z^n.
// Rows of the result are a basis of L; pivots positive, entries above a
// pivot reduced into [0, pivot).
ZMat hnf_mod(const ZMat& gens, const mpz_class& D, std::size_t n);

struct HnfResult {
    ZMat H;                    // rows x cols; first `rank` rows nonzero
    ZMat U;                    // unimodular, U * A = H
    std::size_t rank = 0;
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};
HnfResult hnf_with_transform(const ZMat& A);
ZMat hnf(const ZMat& A); // nonzero rows only

// Integer x with x * A = b, if one exists.
std::optional<ZVec> solve_left(const ZMat& A, const ZVec& b);
// Basis of {x in Z^rows : x * A = 0}.
ZMat left_kernel(const ZMat& A);

struct SnfResult {
    ZVec diag; // d_1 | d_2 | ... ; all positive for nonsingular input
    ZMat U, V; // U * A * V = diag
};
SnfResult snf(const ZMat& A);

} // namespace symsplit
