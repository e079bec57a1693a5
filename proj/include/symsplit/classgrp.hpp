#pragma once

// The ideal class group of L = Q(w, cbrt m) and orders of prime classes.
//
// Cl(L) is generated by the primes of norm at most the Minkowski bound. The
// large ones are rewritten in terms of a small sigma-stable subset S, and
// relations among S come from factoring short elements of random S-ideals.
// Once the relation lattice is stable, each element of prime order of the
// candidate group is shown to be non-principal, which makes the result exact.

#include <optional>
#include <string>
#include <vector>

#include "symsplit/budget.hpp"
#include "symsplit/lattice.hpp"

namespace symsplit {

struct ClassGroupData {
    // relation lattice reached full rank and stayed unchanged for 20% more relations
    bool complete = false;
    // every element of prime order in the candidate group was proven non-principal
    bool certified = false;
    mpz_class h_L = 0;
    std::vector<mpz_class> elementary_divisors; // nontrivial, d_1 | d_2 | ...
    double minkowski_bound = 0;

    std::vector<PrimeIdeal> factor_base; // sorted by norm
    std::vector<std::size_t> sigma;      // factor_base[sigma[i]] is sigma(factor_base[i])
    std::vector<std::size_t> small;      // factor-base indices of S, ascending
    std::vector<ZVec> substitution;      // class of factor_base[i] as exponents over S
    ZMat relations;                      // HNF of the relation lattice over S

    ZMat to_invariants; // |S| x r: S-exponents x map to (x * to_invariants) mod d_i
    ZMat generators;    // r x |S|: nonnegative S-exponents of the invariant generators
    ZMat sigma_action;  // r x r: invariant coordinates c map to c * sigma_action

    std::uint64_t candidates_tried = 0;
    std::size_t relations_found = 0;
    double analytic_ratio = 0; // h_L R divided by its Euler-product estimate
    std::string note;

    std::size_t rank() const { return elementary_divisors.size(); }
    ZVec reduce(ZVec c) const;
    ZVec invariants_of(const ZVec& s_exponents) const;
    mpz_class order_of(const ZVec& c) const;
    // Nonnegative S-exponents of an ideal in the class c.
    ZVec representative(const ZVec& c) const;
    std::optional<std::size_t> index_of(const PrimeIdeal& P) const;
};

ClassGroupData class_group(OrderPtr O, const UnitGroupData& U, const Budgets& budgets);

// Invariant coordinates of [P]; primes outside the factor base are rewritten
// through a smooth element of P. nullopt when the search runs out of budget.
std::optional<ZVec> class_of_prime(OrderPtr O, const ClassGroupData& cg, const PrimeIdeal& P,
                                   const Budgets& budgets);

// h_L R estimated from the Euler product of the Dedekind zeta residue over p <= bound.
double analytic_hR_estimate(const NumberFieldOrder& O, std::uint64_t bound);
double minkowski_bound(const NumberFieldOrder& O);

struct ClassOrderResult {
    mpz_class p;
    bool determined = false;
    unsigned long h_p = 0;
    PrimeIdeal prime;            // the prime above p whose powers were tested
    FieldElement generator;      // generates prime^h_p
    std::vector<bool> conjugate_agrees; // one flag per prime above p
    std::vector<unsigned long> tested;  // exponents tried, in order
    std::string note;
};

// Least k with P^k principal, for the first prime P above p. Exponents are
// restricted to divisors of h_L when cg is complete, else 1, 2, ... hp_cap.
ClassOrderResult class_order_of_prime(OrderPtr O, const UnitGroupData& U, const ClassGroupData* cg,
                                      const mpz_class& p, const Budgets& budgets);
// Same for a given prime P; `conjugates` (P included) are checked for equal order.
ClassOrderResult class_order_of_ideal(OrderPtr O, const UnitGroupData& U, const ClassGroupData* cg,
                                      const PrimeIdeal& P, const std::vector<PrimeIdeal>& conjugates,
                                      const Budgets& budgets);

unsigned long gcd_with_degree(unsigned long h_p, unsigned long q);

} // namespace symsplit
