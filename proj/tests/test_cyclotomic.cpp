#include "doctest.h"

#include <numeric>

#include "symsplit/cyclotomic.hpp"
#include "symsplit/errors.hpp"

using namespace symsplit;

namespace {

u64 brute_order(u64 p, u64 l)
{
    u64 x = p % l, f = 1;
    while (x != 1) {
        x = x * p % l;
        ++f;
    }
    return f;
}

u64 brute_phi(u64 l)
{
    u64 c = 0;
    for (u64 a = 1; a <= l; ++a) c += std::gcd(a, l) == 1;
    return c;
}

} // namespace

TEST_CASE("decomposition shape examples")
{
    auto s = decomposition_shape(3, 7);
    CHECK(s.f == 1);
    CHECK(s.r == 2);
    s = decomposition_shape(3, 23);
    CHECK(s.f == 2);
    CHECK(s.r == 1);
    s = decomposition_shape(7, 2);
    CHECK(s.f == 3);
    CHECK(s.r == 2);
    CHECK_THROWS_AS(decomposition_shape(21, 7), MathError);
}

TEST_CASE("decomposition shape against brute force, l < 50, p < 100")
{
    for (u64 l = 3; l < 50; ++l)
        for (u64 p : primes_up_to(100)) {
            if (l % p == 0) continue;
            auto s = decomposition_shape(l, p);
            CHECK(s.f == brute_order(p, l));
            CHECK(s.f * s.r == brute_phi(l));
            // r = 1 iff p generates (Z/l)^*
            CHECK((s.r == 1) == (brute_order(p, l) == brute_phi(l)));
        }
}

TEST_CASE("kummer shapes")
{
    auto k = kummer_shape_for(43, 3, 23);
    REQUIRE(k.parts.size() == 1);
    CHECK(k.parts[0].e == 1);
    CHECK(k.parts[0].f == 2);
    CHECK(k.parts[0].count == 3);

    k = kummer_shape_for(11, 3, 19);
    REQUIRE(k.parts.size() == 1);
    CHECK(k.parts[0].count == 6);
    CHECK(k.parts[0].f == 1);

    k = kummer_shape_for(14, 3, 7);
    CHECK(k.outside_splitting_scope);
    CHECK(k.total_degree() == 6);
    for (auto& part : k.parts) CHECK(part.e == 3);

    CHECK_THROWS_AS(kummer_shape(3, {0}, decomposition_shape(3, 7)), MathError);

    for (long m : {2, 5, 6, 7, 10, 11, 12, 43})
        for (u64 p : primes_up_to(200)) {
            if (p == 3) continue;
            CHECK(kummer_shape_for(m, 3, p).total_degree() == 6);
        }
    for (u64 l : {5ul, 7ul, 11ul})
        for (u64 p : primes_up_to(60)) {
            if (p == l) continue;
            CHECK(kummer_shape_for(2, l, p).total_degree() == l * (l - 1));
        }
}
