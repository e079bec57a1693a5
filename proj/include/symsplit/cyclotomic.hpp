#pragma once

// Decomposition shapes of rational primes in Q(zeta_l) and in the Kummer
// extension Q(zeta_l, m^(1/l)).

#include <vector>

#include <gmpxx.h>

#include "symsplit/numtheory.hpp"
#include "symsplit/residue.hpp"

namespace symsplit {

struct CyclotomicSplitShape {
    u64 l = 0, p = 0;
    u64 f = 0; // order of p mod l
    u64 r = 0; // phi(l) / f
};

CyclotomicSplitShape decomposition_shape(u64 l, u64 p);

enum class KummerBehavior { RamifiedPower, Inert, SplitsIntoL };
const char* behavior_name(KummerBehavior b);

struct KummerShapePart {
    u64 e, f, count;
};

struct KummerSplitShape {
    std::vector<KummerBehavior> per_prime;
    std::vector<KummerShapePart> parts; // aggregated, sorted by (e, f)
    // set when some prime above p divides m: the shape is still reported
    // but the splitting rules do not apply there
    bool outside_splitting_scope = false;
    u64 total_degree() const;
};

// exponents[i] is the character exponent at the i-th prime above p, or -1
// for the zero character.
KummerSplitShape kummer_shape(u64 l, const std::vector<int>& exponents, const CyclotomicSplitShape& shape);
KummerSplitShape kummer_shape(const std::vector<CharacterValue>& chars, const CyclotomicSplitShape& shape);

// Characters of the rational m at the primes above p, then kummer_shape.
KummerSplitShape kummer_shape_for(const mpz_class& m, u64 l, u64 p);

} // namespace symsplit
