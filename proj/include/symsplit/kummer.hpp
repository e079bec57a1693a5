#pragma once

// The Kummer field L = Q(w, c), c^3 = m: maximal order, elements, ideals
// and prime decomposition.
//
// Two coordinate systems are used. The power basis is
// E = (1, c, c^2, w, w c, w c^2); the integral basis (omega_0 = 1, ...) of
// O_L is stored as rows of rational E-coordinates. Elements and ideals are
// kept in integral-basis coordinates.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include "symsplit/eisenstein.hpp"
#include "symsplit/intmat.hpp"

namespace symsplit {

using Real = boost::multiprecision::mpfr_float;

struct Complex {
    Real re, im;
};

Real to_real(const mpz_class& z);
Real to_real(const mpq_class& q);

// Element a + b w of K.
struct KElement {
    mpq_class a, b;
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    EisensteinInt to_eisenstein() const; // throws unless integral
    mpq_class norm() const { return a * a - a * b + b * b; }
};
KElement operator*(const KElement& x, const KElement& y);
bool operator==(const KElement& x, const KElement& y);
KElement to_k(const EisensteinInt& z);

class NumberFieldOrder;
using OrderPtr = std::shared_ptr<const NumberFieldOrder>;

class NumberFieldOrder {
public:
    static constexpr int n = 6;

    // m cube-free, not 0 or +-1. digits: decimal precision of the embeddings.
    static OrderPtr build(const mpz_class& m, unsigned digits = 128);

    const mpz_class& m() const { return m_; }
    // Minimal polynomial of w + c, coefficients low to high.
    const ZVec& defining_polynomial() const { return poly_; }
    const ZMat& basis_numerators() const { return basis_num_; }
    const mpz_class& basis_denominator() const { return basis_den_; }
    const mpz_class& discriminant() const { return disc_; }
    // [O_L : Z[w, c]]
    const mpz_class& index() const { return index_; }
    // primes at which p-maximality was established by the round-2 loop
    const std::vector<mpz_class>& maximalized_primes() const { return max_primes_; }
    unsigned digits() const { return digits_; }

    // omega_i * omega_j in integral coordinates
    const ZVec& table(std::size_t i, std::size_t j) const { return table_[i][j]; }
    ZVec mul(const ZVec& x, const ZVec& y) const;
    QVec mul(const QVec& x, const QVec& y) const;
    // row i = coordinates of omega_i * x
    ZMat mult_matrix(const ZVec& x) const;
    ZVec sigma(const ZVec& x) const;
    QVec sigma(const QVec& x) const;
    const ZMat& sigma_matrix() const { return sigma_; }
    mpz_class trace(const ZVec& x) const;

    QVec to_power_basis(const QVec& x) const;
    QVec from_power_basis(const QVec& e) const;
    ZVec one() const;
    ZVec from_int(const mpz_class& a) const;
    ZVec from_eisenstein(const EisensteinInt& z) const;
    ZVec cube_root() const;  // coordinates of c
    ZVec eps() const;        // coordinates of w

    KElement relative_norm(const QVec& x) const;
    mpq_class norm(const QVec& x) const;
    mpz_class norm(const ZVec& x) const;
    // N_{L/Q} as the determinant of the multiplication matrix (cross-check)
    mpz_class norm_by_determinant(const ZVec& x) const;

    // Embedding k in {0, 1, 2}: w -> exp(2 pi i / 3), c -> rho * w^k with rho
    // the real cube root of m. The other three embeddings are conjugates.
    Complex embed(std::size_t k, const QVec& x) const;
    const Complex& basis_embedding(std::size_t k, std::size_t i) const { return emb_[k][i]; }
    // double-precision copy: [k][i] = (re, im) of sigma_k(omega_i)
    const std::array<std::array<std::array<double, 2>, 6>, 3>& basis_embedding_d() const { return emb_d_; }

    std::string describe() const;

private:
    NumberFieldOrder() = default;
    void finish(unsigned digits);

    mpz_class m_;
    ZVec poly_;
    ZMat basis_num_;
    mpz_class basis_den_;
    QMat basis_q_, basis_inv_;
    mpz_class disc_, index_;
    std::vector<mpz_class> max_primes_;
    std::vector<std::vector<ZVec>> table_;
    ZMat sigma_;
    ZVec trace_;
    unsigned digits_ = 128;
    std::array<std::array<Complex, 6>, 3> emb_;
    std::array<std::array<std::array<double, 2>, 6>, 3> emb_d_{};
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(OrderPtr o, QVec coords);
    FieldElement(OrderPtr o, const ZVec& coords);
    static FieldElement from_power_basis(OrderPtr o, const QVec& e);
    static FieldElement from_k(OrderPtr o, const KElement& k);

    const OrderPtr& order() const { return o_; }
    const QVec& coords() const { return x_; }
    QVec power_basis() const { return o_->to_power_basis(x_); }
    bool is_integral() const;
    ZVec integral_coords() const; // throws unless integral
    bool is_zero() const;

    FieldElement operator+(const FieldElement& y) const;
    FieldElement operator-(const FieldElement& y) const;
    FieldElement operator*(const FieldElement& y) const;
    FieldElement inverse() const;
    FieldElement pow(long e) const;
    FieldElement sigma() const;
    KElement relative_norm() const;
    mpq_class norm() const;
    bool operator==(const FieldElement& y) const { return x_ == y.x_; }

private:
    OrderPtr o_;
    QVec x_;
};

// Integral ideal of O_L: upper-triangular row HNF in integral coordinates.
struct IdealHNF {
    ZMat H;
    mpz_class norm;

    bool operator==(const IdealHNF& o) const { return H == o.H; }
    bool is_unit_ideal() const { return norm == 1; }
};

IdealHNF unit_ideal();
// Ideal generated by gens; D must satisfy D * O_L inside the ideal.
IdealHNF ideal_from_generators(const NumberFieldOrder& O, const std::vector<ZVec>& gens, const mpz_class& D);
IdealHNF principal_ideal(const NumberFieldOrder& O, const ZVec& x);
IdealHNF ideal_from_integer(const mpz_class& a);
IdealHNF ideal_mul(const NumberFieldOrder& O, const IdealHNF& I, const IdealHNF& J);
IdealHNF ideal_pow(const NumberFieldOrder& O, const IdealHNF& I, unsigned long k);
IdealHNF ideal_sigma(const NumberFieldOrder& O, const IdealHNF& I);
bool ideal_contains(const IdealHNF& I, const ZVec& x);
bool ideal_contains(const IdealHNF& I, const IdealHNF& J); // J inside I
// closed under multiplication by every omega_i
bool ideal_is_module(const NumberFieldOrder& O, const IdealHNF& I);
// Exact quotient I / a for a rational integer a dividing I.
IdealHNF ideal_div_integer(const IdealHNF& I, const mpz_class& a);
// N(I) * I^-1, an integral ideal.
IdealHNF ideal_scaled_inverse(const NumberFieldOrder& O, const IdealHNF& I);
// x * I^-1 for x in I.
IdealHNF ideal_times_inverse(const NumberFieldOrder& O, const ZVec& x, const IdealHNF& I);

struct PrimeIdeal {
    mpz_class p;
    unsigned e = 0, f = 0;
    ZVec gen2; // P = (p, gen2)
    IdealHNF ideal;
    ZMat tau_matrix; // multiplication by tau in p P^-1 \ p O_L
    // Prime of Z[w] below P when known (canonical form); zero otherwise.
    EisensteinInt below;

    mpz_class norm() const { return ideal.norm; }
};

// Relative Dedekind-Kummer factorization for p not dividing 3m.
std::vector<PrimeIdeal> factor_prime_in_L(const NumberFieldOrder& O, const mpz_class& p);
// Primes above p for any p, via the structure of O_L / p O_L.
std::vector<PrimeIdeal> prime_decomposition(const NumberFieldOrder& O, const mpz_class& p);
// Primes above p by whichever of the two routes applies.
std::vector<PrimeIdeal> primes_above(const NumberFieldOrder& O, const mpz_class& p);

unsigned valuation(const NumberFieldOrder& O, const PrimeIdeal& P, ZVec x);
unsigned valuation(const NumberFieldOrder& O, const PrimeIdeal& P, const IdealHNF& I);
void complete_prime(const NumberFieldOrder& O, PrimeIdeal& P);

} // namespace symsplit
