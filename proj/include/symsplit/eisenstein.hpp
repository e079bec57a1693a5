#pragma once

// The Eisenstein integers Z[w], w^2 + w + 1 = 0.

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace symsplit {

struct EisensteinInt {
    mpz_class a; // coefficient of 1
    mpz_class b; // coefficient of w

    EisensteinInt() = default;
    EisensteinInt(mpz_class a_, mpz_class b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
    EisensteinInt(long a_) : a(a_), b(0) {}

    static EisensteinInt w() { return {0, 1}; }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool is_unit() const;

    EisensteinInt conj() const { return {a - b, -b}; }
    mpz_class norm() const { return a * a - a * b + b * b; }

    std::string str() const; // "a+b*w"
};

bool operator==(const EisensteinInt& x, const EisensteinInt& y);
inline bool operator!=(const EisensteinInt& x, const EisensteinInt& y) { return !(x == y); }
bool operator<(const EisensteinInt& x, const EisensteinInt& y); // lexicographic (a, b)
EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt operator-(const EisensteinInt& x);
EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y);
EisensteinInt pow(EisensteinInt x, unsigned long e);

EisensteinInt parse_eisenstein(const std::string& s);

struct DivMod {
    EisensteinInt q, r;
};
DivMod divmod(const EisensteinInt& z, const EisensteinInt& w);
// Exact quotient; throws if w does not divide z.
EisensteinInt exact_div(const EisensteinInt& z, const EisensteinInt& w);
bool divides(const EisensteinInt& d, const EisensteinInt& z);

// The six units 1, -w^2... listed as w^k and -w^k for k = 0, 1, 2.
std::vector<EisensteinInt> units();
// Exponent k with u = (-w)^k, k in [0, 6); throws if u is not a unit.
int unit_index(const EisensteinInt& u);

// Unique associate with a = 1, b = 0 (mod 3) when coprime to 1 - w;
// otherwise the maximal power of (1 - w) is pulled out first and the
// cofactor normalized. 1 - w is its own canonical form.
EisensteinInt canonical(const EisensteinInt& z);
EisensteinInt gcd(EisensteinInt z, EisensteinInt w);

enum class PrimeKind { Ramified, Inert, Split };
struct RationalPrimeSplitting {
    PrimeKind kind;
    EisensteinInt pi;      // Ramified: 1 - w; Split: canonical prime of norm p; Inert: p
    EisensteinInt pi_conj; // Split only
};
RationalPrimeSplitting factor_rational_prime(const mpz_class& p);

struct EisensteinFactorization {
    EisensteinInt unit;
    std::vector<std::pair<EisensteinInt, unsigned>> factors;
    EisensteinInt refold() const;
};
// The norm is factored with the given bound (see factor_integer).
EisensteinFactorization factor(const EisensteinInt& z, const mpz_class& factor_bound);
EisensteinFactorization factor(const EisensteinInt& z);

bool is_eisenstein_prime(const EisensteinInt& z);

} // namespace symsplit
