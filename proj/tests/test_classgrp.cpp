#include "doctest.h"

#include <map>

#include "symsplit/classgrp.hpp"
#include "symsplit/errors.hpp"
#include "symsplit/numtheory.hpp"

using namespace symsplit;

namespace {

struct Field {
    OrderPtr O;
    UnitGroupData U;
    ClassGroupData cg;
};

const Field& field(long m)
{
    static std::map<long, Field> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    Field F;
    F.O = NumberFieldOrder::build(m);
    F.U = unit_group(*F.O, Budgets{});
    F.cg = class_group(F.O, F.U, Budgets{});
    return cache[m] = F;
}

} // namespace

TEST_CASE("class numbers of the worked examples")
{
    CHECK(field(5).cg.h_L == 1);
    CHECK(field(11).cg.h_L == 4);
    const auto& cg = field(43).cg;
    CHECK(cg.h_L == 48);
    REQUIRE(cg.elementary_divisors.size() == 2);
    CHECK(cg.elementary_divisors[0] == 4);
    CHECK(cg.elementary_divisors[1] == 12);
    for (long m : {5, 11, 43}) {
        CAPTURE(m);
        CHECK(field(m).cg.complete);
        CHECK(field(m).cg.certified);
    }
}

TEST_CASE("class numbers of the sweep fields")
{
    std::map<long, long> h{{2, 1}, {6, 1}, {7, 3}, {10, 1}, {12, 1}};
    for (auto& [m, want] : h) {
        CAPTURE(m);
        CHECK(field(m).cg.h_L == want);
        CHECK(field(m).cg.certified);
    }
}

TEST_CASE("the class number depends only on the field")
{
    CHECK(cube_free_part(mpz_class(16)) == 2);
    CHECK(field(2).cg.h_L == field(cube_free_part(mpz_class(16)).get_si()).cg.h_L);
    // cbrt 4 = (cbrt 2)^2 and 12^2 = 8 * 18 generate the same fields
    CHECK(field(4).O->discriminant() == field(2).O->discriminant());
    CHECK(field(4).cg.h_L == field(2).cg.h_L);
    CHECK(field(18).O->discriminant() == field(12).O->discriminant());
    CHECK(field(18).cg.h_L == field(12).cg.h_L);
}

TEST_CASE("structure invariants")
{
    for (long m : {7, 11, 43}) {
        CAPTURE(m);
        const auto& cg = field(m).cg;
        mpz_class prod = 1;
        for (std::size_t i = 0; i < cg.rank(); ++i) {
            prod *= cg.elementary_divisors[i];
            if (i) CHECK(cg.elementary_divisors[i] % cg.elementary_divisors[i - 1] == 0);
        }
        CHECK(prod == cg.h_L);
        CHECK(det(cg.relations) == cg.h_L);
        for (auto& P : cg.factor_base) CHECK(P.norm().get_d() <= cg.minkowski_bound);
        // every factor-base class has order dividing h_L, and sigma acts compatibly
        for (std::size_t i = 0; i < cg.factor_base.size(); ++i) {
            ZVec c = cg.invariants_of(cg.substitution[i]);
            CHECK(cg.h_L % cg.order_of(c) == 0);
            ZVec s = cg.invariants_of(cg.substitution[cg.sigma[i]]);
            CHECK(cg.reduce(mul(c, cg.sigma_action)) == s);
        }
        // sigma has order 3 on the class group
        ZMat S3 = mul(mul(cg.sigma_action, cg.sigma_action), cg.sigma_action);
        for (std::size_t i = 0; i < cg.rank(); ++i) {
            ZVec e(cg.rank(), 0);
            e[i] = 1;
            CHECK(cg.reduce(mul(e, S3)) == e);
        }
        CHECK(cg.analytic_ratio > 0.9);
        CHECK(cg.analytic_ratio < 1.1);
    }
}

TEST_CASE("classes of factor-base primes match principality")
{
    const auto& F = field(43);
    for (std::size_t i = 0; i < 12; ++i) {
        const PrimeIdeal& P = F.cg.factor_base[i];
        ZVec c = F.cg.invariants_of(F.cg.substitution[i]);
        bool trivial = F.cg.order_of(c) == 1;
        auto r = is_principal(F.O, F.U, P.ideal, Budgets{});
        REQUIRE(r.status != PrincipalStatus::Indeterminate);
        CHECK(trivial == (r.status == PrincipalStatus::Principal));
    }
}

TEST_CASE("class orders of primes")
{
    const auto& F = field(43);
    auto r = class_order_of_prime(F.O, F.U, &F.cg, 23, Budgets{});
    CHECK(r.determined);
    CHECK(r.h_p == 12);
    CHECK(r.tested == std::vector<unsigned long>{1, 2, 3, 4, 6, 8, 12});
    CHECK(r.conjugate_agrees.size() == 3);
    for (bool b : r.conjugate_agrees) CHECK(b);
    CHECK(principal_ideal(*F.O, r.generator.integral_coords()) == ideal_pow(*F.O, r.prime.ideal, 12));

    auto r11 = class_order_of_prime(F.O, F.U, &F.cg, 11, Budgets{});
    CHECK(r11.h_p == 2);
    CHECK(r11.conjugate_agrees.size() == 3);

    const auto& G = field(11);
    auto r19 = class_order_of_prime(G.O, G.U, &G.cg, 19, Budgets{});
    CHECK(r19.h_p == 2);
    CHECK(r19.conjugate_agrees.size() == 6);
    for (bool b : r19.conjugate_agrees) CHECK(b);

    // without the class group the search runs through 1, 2, 3, ...
    auto plain = class_order_of_prime(F.O, F.U, nullptr, 23, Budgets{});
    CHECK(plain.h_p == 12);
    CHECK(plain.tested.size() == 12);
}

TEST_CASE("h_p divides h_L")
{
    for (long m : {7, 11, 43}) {
        const auto& F = field(m);
        for (long p : {2, 5, 13, 17, 19, 31, 37}) {
            if (m % p == 0) continue;
            CAPTURE(m);
            CAPTURE(p);
            auto r = class_order_of_prime(F.O, F.U, &F.cg, p, Budgets{});
            REQUIRE(r.determined);
            CHECK(F.cg.h_L % r.h_p == 0);
        }
    }
}

TEST_CASE("discrete logarithm of a prime beyond the factor base")
{
    const auto& F = field(11);
    // every prime above 211 has norm far beyond the Minkowski bound 180
    auto ps = primes_above(*F.O, 211);
    REQUIRE(ps[0].norm().get_d() > F.cg.minkowski_bound);
    auto c = class_of_prime(F.O, F.cg, ps[0], Budgets{});
    REQUIRE(c.has_value());
    auto r = class_order_of_prime(F.O, F.U, nullptr, 211, Budgets{});
    REQUIRE(r.determined);
    CHECK(F.cg.order_of(*c) == r.h_p);
}

TEST_CASE("gcd with the degree")
{
    CHECK(gcd_with_degree(12, 3) == 3);
    CHECK(gcd_with_degree(2, 3) == 1);
    CHECK(gcd_with_degree(3, 3) == 3);
}

TEST_CASE("an exhausted harvest budget leaves the result incomplete")
{
    const auto& F = field(43);
    Budgets b;
    b.harvest_cap = 20;
    auto cg = class_group(F.O, F.U, b);
    CHECK_FALSE(cg.complete);
    CHECK_FALSE(cg.note.empty());
}
