#pragma once

// Geometry of numbers in O_L: exact integral LLL, Fincke-Pohst enumeration,
// the unit group and principality testing.
//
// T2(x) = sum over all six complex embeddings of |sigma(x)|^2
//       = 2 * sum_{k=0..2} |sigma_k(x)|^2.
// Weighted forms 2 * sum_k w_k |sigma_k(x)|^2 are used to look for elements
// with a prescribed shape of logarithmic embedding.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "symsplit/budget.hpp"
#include "symsplit/kummer.hpp"

namespace symsplit {

// ---- exact LLL

struct LllResult {
    ZMat gram;      // reduced Gram matrix
    ZMat transform; // unimodular; reduced basis = transform * input basis
};

// Integral LLL (Gram version) with delta = num/den. The Gram matrix must be
// positive definite. Lovasz and size conditions, and |det transform| = 1,
// are verified exactly before returning.
LllResult lll_gram(const ZMat& gram, long delta_num = 99, long delta_den = 100);
// Reduce integer row vectors for the standard inner product.
ZMat lll_rows(const ZMat& rows, LllResult* info = nullptr);
bool lovasz_condition_holds(const ZMat& gram, long delta_num = 99, long delta_den = 100);

// ---- enumeration

struct EnumerationStats {
    std::uint64_t nodes = 0;
};

// All nonzero integer v with v^T G v <= bound, one of each +-pair (last
// nonzero coordinate positive), sorted by value then coordinates. Throws
// BudgetExceeded past node_cap nodes.
std::vector<ZVec> enumerate_short_vectors(const ZMat& gram, const mpz_class& bound, std::uint64_t node_cap,
                                          EnumerationStats* stats = nullptr);

// ---- lattices attached to ideals

struct GramLattice {
    ZMat basis; // rows in integral-basis coordinates
    ZMat gram;  // round(scale * weighted T2 Gram) of basis, LLL-reduced
    Real scale;
};

// weights multiply |sigma_k|^2; for unit weights the form is T2.
GramLattice ideal_lattice(const NumberFieldOrder& O, const IdealHNF& I,
                          const std::array<Real, 3>& weights = {Real(1), Real(1), Real(1)});
// Same, starting from an already reduced basis (skips the Euclidean pass).
GramLattice lattice_from_basis(const NumberFieldOrder& O, const ZMat& basis, const std::array<Real, 3>& weights);

// Elements of I with T2(x) <= factor * T2 of the shortest found basis row,
// as coordinates in the integral basis.
std::vector<ZVec> short_elements(const NumberFieldOrder& O, const IdealHNF& I, double factor, std::uint64_t node_cap,
                                 std::size_t limit = 0);

// (log|sigma_k(x)|^2)_k
std::array<double, 3> log_embedding(const NumberFieldOrder& O, const QVec& x);
Real t2_norm(const NumberFieldOrder& O, const QVec& x);

// ---- units

struct UnitGroupData {
    ZVec torsion_generator;       // -w, of order 6
    std::vector<ZVec> fundamental; // two units
    std::vector<std::array<double, 3>> logs;
    Real regulator;
    // true when the log-space scan covered the successive minima, which
    // proves the two units generate the full unit group modulo torsion
    bool certified = false;
    double scanned_radius = 0;
    std::uint64_t cells = 0;
};

UnitGroupData unit_group(const NumberFieldOrder& O, const Budgets& budgets);
// Regulator from high-precision logarithms of the two fundamental units.
Real unit_regulator(const NumberFieldOrder& O, const std::vector<ZVec>& fundamental);

// Multiply x by a unit so that its log embedding lands in the fundamental
// parallelogram of the unit lattice (centered at the norm line).
FieldElement unit_reduce(const NumberFieldOrder& O, const UnitGroupData& U, const FieldElement& x);

// ---- principality

enum class PrincipalStatus { Principal, NotPrincipal, Indeterminate };
const char* principal_status_name(PrincipalStatus s);

struct PrincipalResult {
    PrincipalStatus status = PrincipalStatus::Indeterminate;
    FieldElement generator; // when Principal: generator * O_L = I
    std::uint64_t cells = 0;
    std::uint64_t nodes = 0;
    double bound = 0; // weighted-form bound used per cell
    std::string trace;
};

// I = A * (g) with A integral of small norm, g in L*.
struct ReducedIdeal {
    IdealHNF A;
    FieldElement g;
};
ReducedIdeal reduce_ideal(const NumberFieldOrder& O, OrderPtr optr, const IdealHNF& I, const Budgets& budgets);

PrincipalResult is_principal(OrderPtr O, const UnitGroupData& U, const IdealHNF& I, const Budgets& budgets);

// Generator of prod P_i^{e_i} (e_i >= 0) without forming the full product:
// the running ideal is reduced after every multiplication.
struct IdealPower {
    const PrimeIdeal* prime;
    unsigned long exponent;
};
PrincipalResult principal_generator_of_product(OrderPtr O, const UnitGroupData& U, const std::vector<IdealPower>& factors,
                                               const Budgets& budgets);

} // namespace symsplit
