#include "doctest.h"

#include <random>

#include "symsplit/eisenstein.hpp"
#include "symsplit/errors.hpp"
#include "symsplit/numtheory.hpp"

using namespace symsplit;

namespace {

const EisensteinInt W{0, 1};
const EisensteinInt W2{-1, -1};

bool associates(const EisensteinInt& x, const EisensteinInt& y)
{
    for (auto& u : units())
        if (x * u == y) return true;
    return false;
}

} // namespace

TEST_CASE("ring operations")
{
    CHECK(W * W2 == EisensteinInt(1));
    CHECK(W.conj() == EisensteinInt(-1, -1));
    CHECK((EisensteinInt(1) - W) * (EisensteinInt(1) - W2) == EisensteinInt(3));
    CHECK(W * W == W2);
    CHECK(pow(W, 3) == EisensteinInt(1));
}

TEST_CASE("norm")
{
    CHECK(EisensteinInt(1).norm() == 1);
    CHECK(EisensteinInt(3, 1).norm() == 7);
    CHECK(EisensteinInt(1, -1).norm() == 3);
    CHECK(EisensteinInt(0).norm() == 0);
}

TEST_CASE("divmod examples")
{
    EisensteinInt z{5, 1};
    auto d1 = divmod(z, EisensteinInt(1));
    CHECK(d1.q == z);
    CHECK(d1.r.is_zero());

    auto d2 = divmod(EisensteinInt(7), EisensteinInt(3, 1));
    CHECK(d2.q == EisensteinInt(3, 1).conj());
    CHECK(d2.r.is_zero());

    auto d3 = divmod(z, EisensteinInt(2));
    CHECK(d3.q * EisensteinInt(2) + d3.r == z);
    CHECK(d3.r.norm() < 4);
    // some rounding among floor/ceil per coordinate is Euclidean
    bool exists = false;
    for (int da = 0; da < 2; ++da)
        for (int db = 0; db < 2; ++db) {
            EisensteinInt q{2 + da, db};
            if ((z - q * EisensteinInt(2)).norm() < 4) exists = true;
        }
    CHECK(exists);
    CHECK_THROWS_AS(divmod(z, EisensteinInt(0)), MathError);
}

TEST_CASE("divmod ties go toward zero")
{
    // 1/2 and -1/2 both round to 0
    auto d = divmod(EisensteinInt(1), EisensteinInt(2));
    CHECK(d.q == EisensteinInt(0));
    auto e = divmod(EisensteinInt(-1), EisensteinInt(2));
    CHECK(e.q == EisensteinInt(0));
    auto f = divmod(EisensteinInt(3), EisensteinInt(2));
    CHECK(f.q == EisensteinInt(1));
}

TEST_CASE("gcd")
{
    EisensteinInt z{4, -7};
    CHECK(gcd(z, EisensteinInt(0)) == canonical(z));
    CHECK(associates(gcd(EisensteinInt(3, 1), EisensteinInt(7)), EisensteinInt(3, 1)));
    CHECK(gcd(EisensteinInt(2), EisensteinInt(5)) == EisensteinInt(1));
    CHECK_THROWS_AS(gcd(EisensteinInt(0), EisensteinInt(0)), MathError);
}

TEST_CASE("units")
{
    auto us = units();
    REQUIRE(us.size() == 6);
    for (auto& u : us) CHECK(u.norm() == 1);
    for (auto& u : us)
        for (auto& v : us) {
            bool in = false;
            for (auto& t : us) in = in || (u * v == t);
            CHECK(in);
        }
    int count = 0;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            if (EisensteinInt(a, b).norm() == 1) ++count;
    CHECK(count == 6);
    for (int k = 0; k < 6; ++k) CHECK(unit_index(pow(EisensteinInt(0, -1), k)) == k);
}

TEST_CASE("factor_rational_prime")
{
    auto r3 = factor_rational_prime(3);
    CHECK(r3.kind == PrimeKind::Ramified);
    CHECK(r3.pi == EisensteinInt(1, -1));
    CHECK(-W2 * r3.pi * r3.pi == EisensteinInt(3));

    auto r7 = factor_rational_prime(7);
    CHECK(r7.kind == PrimeKind::Split);
    CHECK(r7.pi.norm() == 7);
    CHECK(r7.pi_conj.norm() == 7);
    bool a = associates(r7.pi, EisensteinInt(3, 1)) && associates(r7.pi_conj, EisensteinInt(3, 1).conj());
    bool b = associates(r7.pi_conj, EisensteinInt(3, 1)) && associates(r7.pi, EisensteinInt(3, 1).conj());
    CHECK((a || b));

    CHECK(factor_rational_prime(23).kind == PrimeKind::Inert);
    CHECK_THROWS_AS(factor_rational_prime(21), MathError);

    for (u64 p : primes_up_to(10000)) {
        auto s = factor_rational_prime(mpz_class((unsigned long)p));
        if (p == 3) CHECK(s.kind == PrimeKind::Ramified);
        else if (p % 3 == 1) {
            CHECK(s.kind == PrimeKind::Split);
            CHECK(s.pi.norm() == p);
            CHECK(associates(s.pi * s.pi_conj, EisensteinInt(mpz_class((unsigned long)p))));
        } else CHECK(s.kind == PrimeKind::Inert);
    }
}

TEST_CASE("canonical associates")
{
    CHECK(canonical(EisensteinInt(1, -1)) == EisensteinInt(1, -1));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        EisensteinInt z{(long)(rng() % 2001) - 1000, (long)(rng() % 2001) - 1000};
        if (z.is_zero()) continue;
        EisensteinInt c = canonical(z);
        CHECK(canonical(c) == c);
        CHECK(associates(c, z));
        for (auto& u : units()) CHECK(canonical(z * u) == c);
    }
}

TEST_CASE("factor examples")
{
    auto fu = factor(W);
    CHECK(fu.unit == W);
    CHECK(fu.factors.empty());

    auto f6 = factor(EisensteinInt(6));
    CHECK(f6.refold() == EisensteinInt(6));
    REQUIRE(f6.factors.size() == 2);
    bool saw3 = false, saw2 = false;
    for (auto& [q, e] : f6.factors) {
        if (q == EisensteinInt(1, -1)) { saw3 = true; CHECK(e == 2); }
        if (associates(q, EisensteinInt(2))) { saw2 = true; CHECK(e == 1); }
    }
    CHECK(saw3);
    CHECK(saw2);

    EisensteinInt z{21, 7};
    auto f = factor(z);
    CHECK(f.refold() == z);
    unsigned total = 0;
    for (auto& [q, e] : f.factors) {
        CHECK(q.norm() == 7);
        total += e;
    }
    CHECK(total == 3);
}

TEST_CASE("factor refold and prime shape on random inputs")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        long a = (long)(rng() % 1000001) - 500000, b = (long)(rng() % 1000001) - 500000;
        EisensteinInt z{a, b};
        if (z.is_zero()) continue;
        auto f = factor(z);
        CHECK(f.refold() == z);
        CHECK(f.unit.is_unit());
        for (auto& [q, e] : f.factors) {
            CHECK(canonical(q) == q);
            mpz_class n = q.norm();
            bool ok = is_prime(n) || (mpz_perfect_square_p(n.get_mpz_t()) && mod_floor(mpz_class(sqrt(n)), 3) == 2);
            CHECK(ok);
        }
    }
}

TEST_CASE("norm multiplicative and divmod bound on random pairs")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        EisensteinInt z{(long)(rng() % 200001) - 100000, (long)(rng() % 200001) - 100000};
        EisensteinInt w{(long)(rng() % 2001) - 1000, (long)(rng() % 2001) - 1000};
        CHECK((z * w).norm() == z.norm() * w.norm());
        if (w.is_zero()) continue;
        auto d = divmod(z, w);
        CHECK(d.q * w + d.r == z);
        CHECK(d.r.norm() < w.norm());
    }
}

TEST_CASE("text form")
{
    CHECK(EisensteinInt(3, 1).str() == "3+1*w");
    CHECK(EisensteinInt(-2, -3).str() == "-2-3*w");
    CHECK(parse_eisenstein("3+1*w") == EisensteinInt(3, 1));
    CHECK(parse_eisenstein("-2-3*w") == EisensteinInt(-2, -3));
    CHECK(parse_eisenstein("w") == W);
    CHECK(parse_eisenstein("-w") == -W);
    CHECK(parse_eisenstein("17") == EisensteinInt(17));
    CHECK(parse_eisenstein("5*w+2") == EisensteinInt(2, 5));
    CHECK_THROWS_AS(parse_eisenstein("3+*w"), MathError);
    CHECK_THROWS_AS(parse_eisenstein("x"), MathError);
    CHECK_THROWS_AS(parse_eisenstein(""), MathError);
}
