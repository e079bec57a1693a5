#include "doctest.h"

#include <map>
#include <random>

#include "symsplit/errors.hpp"
#include "symsplit/kummer.hpp"
#include "symsplit/numtheory.hpp"

using namespace symsplit;

namespace {

OrderPtr order(long m)
{
    static std::map<long, OrderPtr> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    return cache[m] = NumberFieldOrder::build(m);
}

ZVec random_element(std::mt19937_64& rng, long bound)
{
    ZVec v(6);
    for (auto& x : v) x = (long)(rng() % (2 * bound + 1)) - bound;
    return v;
}

IdealHNF refold(const NumberFieldOrder& O, const std::vector<PrimeIdeal>& ps)
{
    IdealHNF I = unit_ideal();
    for (auto& P : ps) I = ideal_mul(O, I, ideal_pow(O, P.ideal, P.e));
    return I;
}

} // namespace

TEST_CASE("discriminants of Q(w, cbrt m)")
{
    std::map<long, std::string> expected{
        {2, "-34992"},   {5, "-1366875"},   {6, "-2834352"},      {7, "-5250987"},
        {10, "-270000"}, {11, "-32019867"}, {12, "-2834352"},     {43, "-7476917787"},
        {-2, "-34992"},  {3, "-177147"},
    };
    for (auto& [m, d] : expected) {
        CAPTURE(m);
        CHECK(order(m)->discriminant().get_str() == d);
    }
}

TEST_CASE("defining polynomial for m = 43")
{
    ZVec f = order(43)->defining_polynomial();
    ZVec want{1936, 132, -123, -79, 6, 3, 1};
    CHECK(f == want);
}

TEST_CASE("non cube-free or unit m is rejected")
{
    CHECK_THROWS_AS(NumberFieldOrder::build(16), MathError);
    CHECK_THROWS_AS(NumberFieldOrder::build(1), MathError);
    CHECK_THROWS_AS(NumberFieldOrder::build(0), MathError);
}

TEST_CASE("index times square root of discriminant ratio")
{
    // disc(Z[w, c]) = -3^9 m^4 for m cube-free and coprime to 3
    for (long m : {2, 5, 7, 10, 11, 43}) {
        auto O = order(m);
        mpz_class d0 = -19683 * mpz_class(m) * m * m * m;
        CAPTURE(m);
        CHECK(O->discriminant() * O->index() * O->index() == d0);
    }
}

TEST_CASE("sigma has order 3 and fixes K")
{
    std::mt19937_64 rng(11);
    for (long m : {2, 10, 43}) {
        auto O = order(m);
        ZVec w = O->eps();
        CHECK(O->sigma(w) == w);
        ZVec c = O->cube_root();
        ZVec wc = O->mul(w, c);
        CHECK(O->sigma(c) == wc);
        for (int t = 0; t < 20; ++t) {
            ZVec x = random_element(rng, 20);
            CHECK(O->sigma(O->sigma(O->sigma(x))) == x);
            ZVec y = random_element(rng, 20);
            CHECK(O->sigma(O->mul(x, y)) == O->mul(O->sigma(x), O->sigma(y)));
        }
    }
}

TEST_CASE("norms: closed form, determinant and embeddings agree")
{
    std::mt19937_64 rng(5);
    for (long m : {2, 7, 43}) {
        auto O = order(m);
        CHECK(O->norm(O->cube_root()) == mpz_class(m) * m);
        CHECK(O->norm(O->eps()) == 1);
        for (int t = 0; t < 10; ++t) {
            ZVec x = random_element(rng, 10);
            mpz_class n = O->norm(x);
            CHECK(n == O->norm_by_determinant(x));
            Real prod = 1;
            QVec xq(x.begin(), x.end());
            for (int k = 0; k < 3; ++k) {
                Complex z = O->embed(k, xq);
                prod *= z.re * z.re + z.im * z.im;
            }
            Real diff = abs(prod - to_real(n));
            CHECK(diff <= Real("1e-20") * (1 + abs(to_real(n))));
        }
    }
}

TEST_CASE("relative norm is multiplicative and lands in K")
{
    std::mt19937_64 rng(9);
    auto O = order(43);
    for (int t = 0; t < 10; ++t) {
        FieldElement x(O, random_element(rng, 8)), y(O, random_element(rng, 8));
        if (x.is_zero() || y.is_zero()) continue;
        CHECK((x * y).relative_norm() == x.relative_norm() * y.relative_norm());
        CHECK((x * x.inverse()) == FieldElement(O, O->one()));
        CHECK(x.pow(-2) * x.pow(3) == x);
    }
}

TEST_CASE("traces of small elements")
{
    auto O = order(43);
    mpz_class t = O->trace(O->one());
    CHECK(t == 6);
    CHECK(O->trace(O->cube_root()) == 0);
    CHECK(O->trace(O->eps()) == -3);
}

TEST_CASE("ideals: products, membership, sigma")
{
    auto O = order(43);
    IdealHNF I = principal_ideal(*O, O->cube_root());
    CHECK(I.norm == 43 * 43);
    CHECK(ideal_is_module(*O, I));
    IdealHNF I3 = ideal_pow(*O, I, 3);
    CHECK(I3 == ideal_from_integer(43));
    CHECK(ideal_sigma(*O, I) == I);
    CHECK(ideal_contains(I, O->from_int(43)));
    CHECK_FALSE(ideal_contains(I, O->from_int(2)));
    CHECK(ideal_div_integer(ideal_from_integer(86), 43) == ideal_from_integer(2));
}

TEST_CASE("Kummer factorization of unramified primes")
{
    struct Case {
        long m, p;
        std::size_t count;
        unsigned f;
    };
    for (Case c : std::vector<Case>{{43, 23, 3, 2}, {11, 19, 6, 1}, {43, 5, 3, 2}, {2, 7, 2, 3},
                                    {2, 31, 6, 1}, {7, 11, 3, 2}, {10, 13, 2, 3}}) {
        CAPTURE(c.m);
        CAPTURE(c.p);
        auto O = order(c.m);
        auto ps = factor_prime_in_L(*O, c.p);
        REQUIRE(ps.size() == c.count);
        unsigned total = 0;
        for (auto& P : ps) {
            CHECK(P.e == 1);
            CHECK(P.f == c.f);
            CHECK(ideal_is_module(*O, P.ideal));
            total += P.e * P.f;
            // two-element form
            CHECK(ideal_from_generators(*O, {O->from_int(c.p), P.gen2}, c.p) == P.ideal);
            CHECK(valuation(*O, P, P.gen2) >= 1);
        }
        CHECK(total == 6);
        CHECK(refold(*O, ps) == ideal_from_integer(c.p));
        // sigma permutes the primes above p
        for (auto& P : ps) {
            IdealHNF s = ideal_sigma(*O, P.ideal);
            bool found = false;
            for (auto& Q : ps) found = found || Q.ideal == s;
            CHECK(found);
        }
    }
}

TEST_CASE("decomposition of ramified primes")
{
    for (long m : {2, 5, 6, 10, 12, 43, 3, 7}) {
        auto O = order(m);
        auto fac = factor_integer(mpz_class(3 * m));
        for (auto& [p, e] : fac) {
            (void)e;
            CAPTURE(m);
            CAPTURE(p);
            auto ps = prime_decomposition(*O, p);
            unsigned total = 0;
            for (auto& P : ps) total += P.e * P.f;
            CHECK(total == 6);
            CHECK(refold(*O, ps) == ideal_from_integer(p));
            if (p != 3) {
                // p | m: totally ramified over each prime of K above p
                for (auto& P : ps) CHECK(P.e % 3 == 0);
            }
        }
    }
}

TEST_CASE("generic decomposition agrees with the Kummer route")
{
    for (auto [m, p] : std::vector<std::pair<long, long>>{{43, 23}, {11, 19}, {2, 7}, {43, 5}}) {
        auto O = order(m);
        auto a = factor_prime_in_L(*O, p);
        auto b = prime_decomposition(*O, p);
        REQUIRE(a.size() == b.size());
        for (auto& P : a) {
            bool found = false;
            for (auto& Q : b) found = found || P.ideal == Q.ideal;
            CHECK(found);
        }
    }
}

TEST_CASE("valuations are additive")
{
    auto O = order(43);
    auto ps = factor_prime_in_L(*O, 23);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        ZVec x = random_element(rng, 30), y = random_element(rng, 30);
        for (auto& P : ps) CHECK(valuation(*O, P, O->mul(x, y)) == valuation(*O, P, x) + valuation(*O, P, y));
    }
    for (auto& P : ps) CHECK(valuation(*O, P, O->from_int(23 * 23)) == 2);
}

TEST_CASE("norm of ideals equals product of prime norms")
{
    auto O = order(43);
    ZVec x{3, -1, 2, 0, 1, 5};
    IdealHNF I = principal_ideal(*O, x);
    mpz_class n = abs(O->norm(x));
    CHECK(I.norm == n);
    mpz_class acc = 1;
    for (auto& [p, e] : factor_integer(n)) {
        (void)e;
        for (auto& P : primes_above(*O, p)) {
            unsigned v = valuation(*O, P, x);
            for (unsigned k = 0; k < v; ++k) acc *= P.norm();
        }
    }
    CHECK(acc == n);
}
