#include "doctest.h"

#include <random>
#include <set>

#include "symsplit/errors.hpp"
#include "symsplit/residue.hpp"

using namespace symsplit;

namespace {

// Brute force: is alpha a cube in Z[w]/(pi)? Enumerate residues x + y w.
bool brute_cube_mod_pi(const EisensteinInt& alpha, const EisensteinInt& pi)
{
    mpz_class n = pi.norm();
    long N = n.get_si();
    long side = N; // residues a + b w with 0 <= a, b < N cover the quotient
    long p = N;
    if (!is_prime(n)) p = (long)std::sqrt((double)N);
    side = p;
    for (long x = 0; x < side; ++x)
        for (long y = 0; y < side; ++y) {
            EisensteinInt g{x, y};
            if (divides(pi, g)) continue;
            if (divides(pi, pow(g, 3) - alpha)) return true;
        }
    return false;
}

} // namespace

TEST_CASE("cubic character examples")
{
    EisensteinInt pi7{3, 1};
    CHECK(cubic_character(EisensteinInt(1), pi7) == CharacterValue::One);
    CHECK(cubic_character(EisensteinInt(2), pi7) != CharacterValue::One);
    CHECK(cubic_character(EisensteinInt(2), pi7) != CharacterValue::Zero);
    CHECK(cubic_character(EisensteinInt(43), EisensteinInt(23)) == CharacterValue::One);
    CHECK(cubic_character(EisensteinInt(14), pi7) == CharacterValue::Zero);
    CHECK_THROWS_AS(cubic_character(EisensteinInt(2), EisensteinInt(1, -1)), MathError);
    CHECK_THROWS_AS(cubic_character(EisensteinInt(2), EisensteinInt(7)), MathError);
}

TEST_CASE("cubic character agrees with brute-force cube test")
{
    std::vector<EisensteinInt> primes;
    for (u64 p : primes_up_to(40)) {
        if (p == 3) continue;
        auto s = factor_rational_prime(mpz_class((unsigned long)p));
        primes.push_back(s.pi);
        if (s.kind == PrimeKind::Split) primes.push_back(s.pi_conj);
    }
    std::mt19937_64 rng(3);
    for (auto& pi : primes) {
        for (int i = 0; i < 15; ++i) {
            EisensteinInt a{(long)(rng() % 200) - 100, (long)(rng() % 200) - 100};
            auto c = cubic_character(a, pi);
            if (divides(pi, a)) {
                CHECK(c == CharacterValue::Zero);
                continue;
            }
            CHECK((c == CharacterValue::One) == brute_cube_mod_pi(a, pi));
        }
    }
}

TEST_CASE("character multiplicativity, cube kernel, conjugation")
{
    std::mt19937_64 rng(5);
    std::vector<EisensteinInt> primes;
    for (u64 p : primes_up_to(400)) {
        if (p == 3) continue;
        auto s = factor_rational_prime(mpz_class((unsigned long)p));
        primes.push_back(s.pi);
        if (s.kind == PrimeKind::Split) primes.push_back(s.pi_conj);
    }
    for (int i = 0; i < 300; ++i) {
        auto& pi = primes[rng() % primes.size()];
        EisensteinInt a{(long)(rng() % 20001) - 10000, (long)(rng() % 20001) - 10000};
        EisensteinInt b{(long)(rng() % 20001) - 10000, (long)(rng() % 20001) - 10000};
        if (divides(pi, a) || divides(pi, b)) continue;
        CHECK(cubic_character(a * b, pi) == character_mul(cubic_character(a, pi), cubic_character(b, pi)));
        CHECK(cubic_character(pow(a, 3), pi) == CharacterValue::One);
        CHECK(cubic_character(a.conj(), pi.conj()) == character_conj(cubic_character(a, pi)));
    }
}

TEST_CASE("q_power_residue_mod_p")
{
    CHECK(q_power_residue_mod_p(5, 17, 3));
    CHECK_FALSE(q_power_residue_mod_p(5, 19, 3));
    for (long a = 1; a < 23; ++a) CHECK(q_power_residue_mod_p(a, 23, 3));
    CHECK_THROWS_AS(q_power_residue_mod_p(38, 19, 3), MathError);
    try {
        q_power_residue_mod_p(38, 19, 3);
    } catch (const MathError& e) {
        CHECK(e.code() == ErrorCode::NotCoprime);
    }
}

TEST_CASE("q_power_residue_mod_p brute force for p < 200")
{
    for (u64 p : primes_up_to(200)) {
        if (p == 3) continue;
        std::set<u64> cubes;
        for (u64 x = 1; x < p; ++x) cubes.insert(x * x * x % p);
        for (u64 a = 1; a < p; ++a)
            CHECK(q_power_residue_mod_p(mpz_class((unsigned long)a), mpz_class((unsigned long)p), 3) == (cubes.count(a) > 0));
    }
}

TEST_CASE("cubic residue of field elements")
{
    CHECK(cubic_residue_of_field_element(EisensteinInt(43), 23));
    CHECK_FALSE(cubic_residue_of_field_element(EisensteinInt(5), 19));
    for (u64 p : primes_up_to(100)) {
        if (p % 3 != 1) continue;
        for (long a = 1; a < 60; ++a) {
            if (a % (long)p == 0) continue;
            CHECK(cubic_residue_of_field_element(EisensteinInt(a), mpz_class((unsigned long)p)) ==
                  q_power_residue_mod_p(a, mpz_class((unsigned long)p), 3));
        }
    }
    CHECK_THROWS_AS(cubic_residue_of_field_element(EisensteinInt(14), 7), MathError);
}

TEST_CASE("residue fields")
{
    ResidueField f1(7, 1);
    CHECK(f1.mul(f1.from_int(3), f1.from_int(5)) == f1.from_int(1));

    ResidueField F(23, 2);
    CHECK(F.modulus() == fp::Poly{1, 1, 1});
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        fp::Poly x{rng() % 23, rng() % 23};
        fp::trim(x);
        if (x.empty()) continue;
        CHECK(F.pow(x, 528) == F.from_int(1));
    }
    // Frobenius fixes exactly the prime field
    auto t = F.gen();
    CHECK(F.frobenius(t) != t);
    for (u64 c = 0; c < 23; ++c) CHECK(F.frobenius(F.from_int(c)) == F.from_int(c));
    int fixed = 0;
    for (u64 a = 0; a < 23; ++a)
        for (u64 b = 0; b < 23; ++b) {
            fp::Poly x{a, b};
            fp::trim(x);
            if (F.frobenius(x) == x) ++fixed;
        }
    CHECK(fixed == 23);

    ResidueField G(7, 2); // 7 = 1 mod 3: t^2 - 3
    CHECK(G.modulus() == fp::Poly{4, 0, 1});
    ResidueField H(5, 3);
    CHECK(fp::is_irreducible(H.modulus(), 5));
}

TEST_CASE("general power characters")
{
    // l = 3 at a split prime agrees with the cubic test
    for (u64 p : {7ul, 13ul, 19ul, 31ul, 37ul}) {
        for (long a = 1; a < 30; ++a) {
            if (a % (long)p == 0) continue;
            auto pc = power_characters_rational(a, 3, p);
            bool cube = q_power_residue_mod_p(a, mpz_class((unsigned long)p), 3);
            for (int c : pc.exponents) CHECK((c == 0) == cube);
        }
    }
    // l = 5, p = 11 (f = 1): character trivial iff a is a fifth power mod 11
    for (long a = 1; a < 11; ++a) {
        auto pc = power_characters_rational(a, 5, 11);
        CHECK(pc.f == 1);
        CHECK(pc.primes.size() == 4);
        bool fifth = q_power_residue_mod_p(a, 11, 5);
        for (int c : pc.exponents) CHECK((c == 0) == fifth);
    }
}
