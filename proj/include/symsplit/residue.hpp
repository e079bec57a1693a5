#pragma once

// Power residue characters and finite residue fields.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "symsplit/eisenstein.hpp"
#include "symsplit/fp.hpp"

namespace symsplit {

enum class CharacterValue { Zero, One, Epsilon, EpsilonSquared };

const char* character_code(CharacterValue v); // "0", "1", "w", "w2"
CharacterValue character_mul(CharacterValue x, CharacterValue y);
// w -> w^2 on the value (complex conjugation).
CharacterValue character_conj(CharacterValue x);

// (alpha / pi)_3 for a prime pi of Z[w] not dividing 3.
CharacterValue cubic_character(const EisensteinInt& alpha, const EisensteinInt& pi);

// x^q = alpha (mod p) solvable; throws NotCoprime when p | alpha.
bool q_power_residue_mod_p(const mpz_class& alpha, const mpz_class& p, const mpz_class& q);

// alpha is a cube modulo every prime of Z[w] above p.
bool cubic_residue_of_field_element(const EisensteinInt& alpha, const mpz_class& p);

// F_{p^f} = F_p[t]/(modulus) with a deterministic modulus:
//   f = 1: t;  f = 2: t^2+t+1 for p = 2 mod 3, else t^2 - n with n the least
//   non-residue;  f >= 3: the first monic irreducible in lexicographic order.
class ResidueField {
public:
    using Elem = fp::Poly;

    ResidueField(u64 p, int f);
    // Field F_p[t]/(g) for a caller-chosen irreducible g.
    ResidueField(u64 p, fp::Poly modulus);

    u64 p() const { return p_; }
    int f() const { return f_; }
    const fp::Poly& modulus() const { return mod_; }
    mpz_class order() const; // p^f

    Elem reduce(const Elem& x) const { return fp::mod(x, mod_, p_); }
    Elem add(const Elem& x, const Elem& y) const { return fp::add(x, y, p_); }
    Elem sub(const Elem& x, const Elem& y) const { return fp::sub(x, y, p_); }
    Elem mul(const Elem& x, const Elem& y) const { return fp::mulmod(x, y, mod_, p_); }
    Elem pow(const Elem& x, const mpz_class& e) const { return fp::powmod(x, e, mod_, p_); }
    Elem frobenius(const Elem& x) const { return pow(x, mpz_class((unsigned long)p_)); }
    Elem gen() const { return reduce(Elem{0, 1}); }
    Elem from_int(u64 c) const
    {
        Elem e{c % p_};
        fp::trim(e);
        return e;
    }

private:
    u64 p_;
    int f_;
    fp::Poly mod_;
};

// l-th power character of a rational integer at each prime of Z[zeta_l]
// above p (prime l, p not dividing l). The primes are the irreducible factors
// of the l-th cyclotomic polynomial mod p in the order of equal_degree_factor;
// zeta_l maps to the class of t. Entry -1 means p | alpha, else c with
// alpha^((p^f-1)/l) = t^c.
struct PowerCharacters {
    int f = 0;
    std::vector<fp::Poly> primes;
    std::vector<int> exponents;
};
PowerCharacters power_characters_rational(const mpz_class& alpha, u64 l, u64 p);

fp::Poly cyclotomic_poly_mod(u64 l, u64 p);

} // namespace symsplit
