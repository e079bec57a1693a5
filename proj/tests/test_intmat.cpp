#include "doctest.h"

#include <random>

#include "symsplit/intmat.hpp"

using namespace symsplit;

namespace {

ZMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range)
{
    ZMat A = zmat(r, c);
    for (auto& row : A)
        for (auto& x : row) x = (long)(rng() % (2 * range + 1)) - range;
    return A;
}

bool in_row_lattice(const ZMat& B, const ZVec& v) { return solve_left(B, v).has_value(); }

} // namespace

TEST_CASE("determinant")
{
    ZMat A = {{2, 0, 1}, {1, 3, 2}, {1, 1, 2}};
    CHECK(det(A) == 6);
    ZMat B = {{0, 1}, {1, 0}};
    CHECK(det(B) == -1);
    ZMat C = {{1, 2}, {2, 4}};
    CHECK(det(C) == 0);
}

TEST_CASE("hnf_mod agrees with plain hnf on full-rank lattices")
{
    std::mt19937_64 rng(2);
    for (int it = 0; it < 60; ++it) {
        ZMat A = random_matrix(rng, 6 + rng() % 4, 5, 30);
        ZMat H = hnf(A);
        if (H.size() < 5) continue;
        mpz_class D = abs(det(H));
        ZMat Hm = hnf_mod(A, D, 5);
        CHECK(Hm == H);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(H[i][i] > 0);
            for (std::size_t j = 0; j < i; ++j) CHECK(H[i][j] == 0);
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(H[k][i] >= 0);
                CHECK(H[k][i] < H[i][i]);
            }
        }
    }
}

TEST_CASE("hnf with transform, solve_left, kernel")
{
    std::mt19937_64 rng(4);
    for (int it = 0; it < 40; ++it) {
        ZMat A = random_matrix(rng, 5, 3, 9);
        auto R = hnf_with_transform(A);
        CHECK(mul(R.U, A) == R.H);
        CHECK(abs(det(R.U)) == 1);
        ZVec x(5);
        for (auto& v : x) v = (long)(rng() % 11) - 5;
        ZVec b = mul(x, A);
        auto sol = solve_left(A, b);
        REQUIRE(sol.has_value());
        CHECK(mul(*sol, A) == b);
        for (auto& k : left_kernel(A)) CHECK(mul(k, A) == ZVec(3, 0));
        CHECK(left_kernel(A).size() + R.rank == 5);
    }
    ZMat A = {{2, 0}, {0, 2}};
    CHECK_FALSE(solve_left(A, ZVec{1, 0}).has_value());
}

TEST_CASE("smith normal form")
{
    std::mt19937_64 rng(6);
    for (int it = 0; it < 40; ++it) {
        ZMat A = random_matrix(rng, 4, 4, 12);
        mpz_class d = det(A);
        if (d == 0) continue;
        auto S = snf(A);
        ZMat D = mul(mul(S.U, A), S.V);
        mpz_class prod = 1;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) CHECK(D[i][j] == 0);
            CHECK(D[i][i] == S.diag[i]);
            CHECK(S.diag[i] > 0);
            if (i + 1 < 4) CHECK(mpz_divisible_p(S.diag[i + 1].get_mpz_t(), S.diag[i].get_mpz_t()));
            prod *= S.diag[i];
        }
        CHECK(prod == abs(d));
        CHECK(abs(det(S.U)) == 1);
        CHECK(abs(det(S.V)) == 1);
    }
    ZMat G = {{4, 0}, {0, 6}};
    auto S = snf(G);
    CHECK(S.diag == ZVec{2, 12});
    (void)in_row_lattice;
}
