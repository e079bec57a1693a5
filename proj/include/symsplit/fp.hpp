#pragma once

// Arithmetic over F_p for word-size p: polynomials and dense linear algebra.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "symsplit/numtheory.hpp"

namespace symsplit::fp {

// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
using Poly = std::vector<u64>;
using Matrix = std::vector<std::vector<u64>>;

void trim(Poly& f);
int degree(const Poly& f);
Poly add(const Poly& f, const Poly& g, u64 p);
Poly sub(const Poly& f, const Poly& g, u64 p);
Poly mul(const Poly& f, const Poly& g, u64 p);
Poly scale(const Poly& f, u64 c, u64 p);
void divmod(const Poly& f, const Poly& g, u64 p, Poly& q, Poly& r);
Poly mod(const Poly& f, const Poly& g, u64 p);
Poly monic(const Poly& f, u64 p);
Poly gcd(Poly f, Poly g, u64 p);
Poly mulmod(const Poly& f, const Poly& g, const Poly& m, u64 p);
Poly powmod(const Poly& f, const mpz_class& e, const Poly& m, u64 p);
u64 eval(const Poly& f, u64 x, u64 p);

// Distinct roots in F_p, ascending.
std::vector<u64> roots(const Poly& f, u64 p);
bool is_irreducible(const Poly& f, u64 p);
// f squarefree, product of irreducibles of degree d: the monic factors,
// sorted by coefficient vector read from the leading term down.
std::vector<Poly> equal_degree_factor(const Poly& f, int d, u64 p);

// Basis of {x : A x = 0}; A is rows x cols.
Matrix kernel(Matrix A, u64 p);
std::size_t rank(Matrix A, u64 p);
Matrix transpose(const Matrix& A);

} // namespace symsplit::fp
