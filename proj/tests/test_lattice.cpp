#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "symsplit/errors.hpp"
#include "symsplit/kernels.hpp"
#include "symsplit/lattice.hpp"

using namespace symsplit;

namespace {

OrderPtr order(long m)
{
    static std::map<long, OrderPtr> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    return cache[m] = NumberFieldOrder::build(m);
}

const UnitGroupData& units(long m)
{
    static std::map<long, UnitGroupData> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    return cache[m] = unit_group(*order(m), Budgets{});
}

ZMat gram_of_rows(const ZMat& B)
{
    ZMat G = zmat(B.size(), B.size());
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            for (std::size_t k = 0; k < B[i].size(); ++k) G[i][j] += B[i][k] * B[j][k];
    return G;
}

ZMat random_unimodular(std::mt19937_64& rng, int n, int steps)
{
    ZMat U = identity(n);
    for (int s = 0; s < steps; ++s) {
        int i = rng() % n, j = rng() % n;
        if (i == j) continue;
        long q = (long)(rng() % 5) - 2;
        for (int k = 0; k < n; ++k) U[i][k] += q * U[j][k];
    }
    return U;
}

mpz_class qform(const ZMat& G, const ZVec& v)
{
    mpz_class s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) s += v[i] * G[i][j] * v[j];
    return s;
}

bool canonical_sign(const ZVec& v)
{
    for (std::size_t i = v.size(); i-- > 0;)
        if (v[i] != 0) return v[i] > 0;
    return false;
}

} // namespace

TEST_CASE("LLL on an orthogonal lattice keeps it up to order and sign")
{
    ZMat B = zmat(6, 6);
    for (int i = 0; i < 6; ++i) B[i][i] = i + 1;
    LllResult info;
    ZMat R = lll_rows(B, &info);
    std::multiset<mpz_class> before, after;
    for (int i = 0; i < 6; ++i) {
        before.insert(B[i][i] * B[i][i]);
        after.insert(info.gram[i][i]);
    }
    CHECK(before == after);
    CHECK(abs(det(info.transform)) == 1);
}

TEST_CASE("LLL on a scrambled scaled Z^6 recovers the scaled identity")
{
    std::mt19937_64 rng(1);
    ZMat U = random_unimodular(rng, 6, 60);
    ZMat B = mul(U, identity(6));
    for (auto& r : B)
        for (auto& x : r) x *= 7;
    LllResult info;
    lll_rows(B, &info);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(info.gram[i][j] == (i == j ? 49 : 0));
}

TEST_CASE("LLL: Lovasz condition, unimodularity and the first-vector bound")
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 60; ++t) {
        ZMat B = zmat(6, 6);
        for (auto& r : B)
            for (auto& x : r) x = (long)(rng() % 1999) - 999;
        if (det(B) == 0) continue;
        ZMat G = gram_of_rows(B);
        LllResult r = lll_gram(G);
        CHECK(lovasz_condition_holds(r.gram));
        CHECK(abs(det(r.transform)) == 1);
        CHECK(det(r.gram) == det(G));
        // lambda_1 by exhaustive enumeration: b_1^2 <= 2^5 lambda_1^2
        auto sv = enumerate_short_vectors(r.gram, r.gram[0][0], 50'000'000);
        REQUIRE(!sv.empty());
        mpz_class l1 = qform(r.gram, sv.front());
        CHECK(r.gram[0][0] <= 32 * l1);
        // scrambling does not change the reduced lattice's determinant
        ZMat U = random_unimodular(rng, 6, 40);
        ZMat G2 = mul(mul(U, G), transpose(U));
        LllResult r2 = lll_gram(G2);
        CHECK(det(r2.gram) == det(G));
        CHECK(r2.gram[0][0] <= 32 * l1);
    }
}

TEST_CASE("Fincke-Pohst matches a box oracle on 100 random lattices")
{
    std::mt19937_64 rng(3);
    int done = 0;
    std::vector<double> vecs, vals;
    while (done < 100) {
        // near-orthogonal lattice so that the box |x_i| <= 3 provably contains
        // every vector below the bound
        ZMat B = zmat(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) B[i][j] = (i == j) ? (long)(rng() % 40) + 60 : (long)(rng() % 21) - 10;
        ZMat G = gram_of_rows(B);
        QMat Gi = inverse(to_q(G));
        mpz_class bound = G[0][0];
        for (int i = 1; i < 6; ++i) bound = std::min(bound, G[i][i]);
        bound = bound * 2;
        bool box_ok = true;
        for (int i = 0; i < 6; ++i)
            if (std::sqrt(mpq_class(bound * Gi[i][i]).get_d()) >= 3.0) box_ok = false;
        if (!box_ok) continue;
        ++done;
        auto sv = enumerate_short_vectors(G, bound, 10'000'000);
        std::set<ZVec> got(sv.begin(), sv.end());
        CHECK(got.size() == sv.size());
        for (auto& v : sv) {
            CHECK(canonical_sign(v));
            CHECK(qform(G, v) <= bound);
        }
        // oracle: every vector of the box, screened by the batched kernel and
        // confirmed exactly
        std::vector<double> Gd(36);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) Gd[6 * i + j] = G[i][j].get_d();
        vecs.clear();
        std::vector<ZVec> box;
        std::array<long, 6> x{};
        for (long idx = 0; idx < 117649; ++idx) {
            long r = idx;
            for (int k = 0; k < 6; ++k) {
                x[k] = r % 7 - 3;
                r /= 7;
            }
            for (int k = 0; k < 6; ++k) vecs.push_back((double)x[k]);
        }
        vals.resize(vecs.size() / 6);
        kernels::quad_form_batch(Gd.data(), vecs.data(), vals.size(), vals.data());
        std::set<ZVec> oracle;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i] > bound.get_d() * 1.000001 + 1) continue;
            ZVec v(6);
            for (int k = 0; k < 6; ++k) v[k] = (long)vecs[6 * i + k];
            if (!canonical_sign(v)) continue;
            if (qform(G, v) <= bound) oracle.insert(v);
        }
        CHECK(oracle == got);
    }
}

TEST_CASE("enumeration edge cases")
{
    ZMat G = identity(6);
    for (auto& r : G)
        for (auto& x : r) x *= 4;
    CHECK(enumerate_short_vectors(G, 3, 1000).empty());
    CHECK(enumerate_short_vectors(G, 4, 1000).size() == 6);
    CHECK_THROWS_AS(enumerate_short_vectors(G, 400, 10), BudgetExceeded);

    auto O = order(2);
    GramLattice L = ideal_lattice(*O, unit_ideal());
    // T2(1) = 6 in the scaled form is the scale times 6
    mpz_class bound = mpz_class((L.scale * 6).convert_to<double>() * (1 + 1e-9)) + 1;
    auto sv = enumerate_short_vectors(L.gram, bound, 1'000'000);
    bool has_one = false;
    for (auto& v : sv) {
        ZVec x = mul(v, L.basis);
        if (x == O->one()) has_one = true;
        ZVec neg = x;
        for (auto& c : neg) c = -c;
        if (neg == O->one()) has_one = true;
    }
    CHECK(has_one);
}

TEST_CASE("Gram determinant equals N(I)^2 |disc|")
{
    for (long m : {2, 43}) {
        auto O = order(m);
        std::vector<IdealHNF> ideals{unit_ideal(), ideal_from_integer(5)};
        for (auto& P : factor_prime_in_L(*O, 7)) ideals.push_back(P.ideal);
        for (auto& I : ideals) {
            GramLattice L = ideal_lattice(*O, I);
            Real d = to_real(det(L.gram)) / boost::multiprecision::pow(L.scale, 6);
            Real want = to_real(mpz_class(I.norm * I.norm * abs(O->discriminant())));
            CAPTURE(m);
            CHECK(boost::multiprecision::abs(d / want - 1) < Real("1e-15"));
        }
    }
}

TEST_CASE("unit groups: norms, torsion, regulators")
{
    std::map<long, double> reg{{2, 1.815425719}, {5, 23.15521446}, {11, 31.21687788}, {43, 74.74232083}};
    for (auto& [m, R] : reg) {
        auto O = order(m);
        const auto& U = units(m);
        CAPTURE(m);
        CHECK(U.certified);
        CHECK(std::fabs(U.regulator.convert_to<double>() - R) < 1e-6);
        for (auto& u : U.fundamental) CHECK(abs(O->norm(u)) == 1);
        FieldElement z(O, U.torsion_generator), one(O, O->one());
        for (int k = 1; k < 6; ++k) CHECK_FALSE(z.pow(k) == one);
        CHECK(z.pow(6) == one);
    }
}

TEST_CASE("1 + cbrt2 + cbrt4 is a unit in the found unit lattice")
{
    auto O = order(2);
    const auto& U = units(2);
    QVec e(6, 0);
    e[0] = e[1] = e[2] = 1;
    FieldElement u = FieldElement::from_power_basis(O, e);
    CHECK(u.norm() == 1);
    auto l = log_embedding(*O, u.coords());
    double D = U.logs[0][0] * U.logs[1][1] - U.logs[0][1] * U.logs[1][0];
    double a = (l[0] * U.logs[1][1] - l[1] * U.logs[1][0]) / D;
    double b = (U.logs[0][0] * l[1] - U.logs[0][1] * l[0]) / D;
    CHECK(std::fabs(a - std::round(a)) < 1e-9);
    CHECK(std::fabs(b - std::round(b)) < 1e-9);
}

TEST_CASE("is_principal: trivial cases")
{
    auto O = order(43);
    const auto& U = units(43);
    auto r = is_principal(O, U, unit_ideal(), Budgets{});
    CHECK(r.status == PrincipalStatus::Principal);
    CHECK(abs(r.generator.norm()) == 1);
    auto O2 = order(2);
    auto r2 = is_principal(O2, units(2), ideal_from_integer(7), Budgets{});
    REQUIRE(r2.status == PrincipalStatus::Principal);
    CHECK(abs(r2.generator.norm()) == mpq_class(117649));
}

TEST_CASE("is_principal: P above 23 for m = 43 has order 12")
{
    auto O = order(43);
    const auto& U = units(43);
    auto ps = factor_prime_in_L(*O, 23);
    for (unsigned k : {1u, 2u, 3u, 4u, 6u}) {
        auto r = is_principal(O, U, ideal_pow(*O, ps[0].ideal, k), Budgets{});
        CHECK(r.status == PrincipalStatus::NotPrincipal);
    }
    auto I12 = ideal_pow(*O, ps[0].ideal, 12);
    auto r = is_principal(O, U, I12, Budgets{});
    REQUIRE(r.status == PrincipalStatus::Principal);
    CHECK(principal_ideal(*O, r.generator.integral_coords()) == I12);
}

TEST_CASE("is_principal undoes unit translation")
{
    auto O = order(43);
    const auto& U = units(43);
    ZVec x{2, 1, 0, -1, 0, 1};
    FieldElement fx(O, x);
    FieldElement u1(O, U.fundamental[0]), u2(O, U.fundamental[1]);
    for (long a = -3; a <= 3; a += 2)
        for (long b = -3; b <= 3; b += 3) {
            FieldElement y = fx * u1.pow(a) * u2.pow(b);
            IdealHNF I = principal_ideal(*O, y.integral_coords());
            auto r = is_principal(O, U, I, Budgets{});
            REQUIRE(r.status == PrincipalStatus::Principal);
            FieldElement q = r.generator * fx.inverse();
            CHECK(q.is_integral());
            CHECK(abs(q.norm()) == 1);
        }
}

TEST_CASE("principal generator of a product of prime powers")
{
    auto O = order(43);
    const auto& U = units(43);
    auto ps = factor_prime_in_L(*O, 23);
    auto r = principal_generator_of_product(O, U, {{&ps[0], 7}, {&ps[0], 5}}, Budgets{});
    REQUIRE(r.status == PrincipalStatus::Principal);
    mpz_class n;
    mpz_pow_ui(n.get_mpz_t(), mpz_class(23).get_mpz_t(), 24);
    CHECK(abs(r.generator.norm()) == mpq_class(n));
    auto r2 = principal_generator_of_product(O, U, {{&ps[0], 5}}, Budgets{});
    CHECK(r2.status == PrincipalStatus::NotPrincipal);
}

TEST_CASE("ideal reduction keeps the class")
{
    auto O = order(43);
    auto ps = factor_prime_in_L(*O, 23);
    IdealHNF I = ideal_pow(*O, ps[1].ideal, 5);
    ReducedIdeal R = reduce_ideal(*O, O, I, Budgets{});
    CHECK(R.A.norm < I.norm);
    // A * (g) = I: compare norms and containment of g * A in I
    CHECK(abs(R.g.norm()) * R.A.norm == I.norm);
    for (auto& h : R.A.H) {
        FieldElement y = FieldElement(O, h) * R.g;
        REQUIRE(y.is_integral());
        CHECK(ideal_contains(I, y.integral_coords()));
    }
}

TEST_CASE("scaled inverse and colon ideals")
{
    auto O = order(11);
    auto ps = factor_prime_in_L(*O, 19);
    IdealHNF I = ideal_mul(*O, ps[0].ideal, ps[2].ideal);
    IdealHNF J = ideal_scaled_inverse(*O, I);
    CHECK(ideal_mul(*O, I, J) == ideal_from_integer(I.norm));
    ZVec x = lll_rows(I.H)[0];
    IdealHNF K = ideal_times_inverse(*O, x, I);
    CHECK(ideal_mul(*O, K, I) == principal_ideal(*O, x));
}

TEST_CASE("SIMD kernels agree with the scalar path")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-50, 50);
    for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 64ul, 1001ul}) {
        std::vector<double> G(36), vecs(6 * n), emb(36);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j <= i; ++j) G[6 * i + j] = G[6 * j + i] = dist(rng);
        for (auto& v : vecs) v = std::round(dist(rng));
        for (auto& e : emb) e = dist(rng) / 10;
        std::vector<double> a(n), b(n), sa(3 * n), sb(3 * n), na(n), nb(n);
        kernels::scalar::quad_form_batch(G.data(), vecs.data(), n, a.data());
        kernels::scalar::embedding_norms_batch(emb.data(), vecs.data(), n, sa.data(), na.data());
        if (!kernels::avx2_available()) continue;
        kernels::avx2::quad_form_batch(G.data(), vecs.data(), n, b.data());
        kernels::avx2::embedding_norms_batch(emb.data(), vecs.data(), n, sb.data(), nb.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::fabs(a[i] - b[i]) <= 1e-12 * (1 + std::fabs(a[i])) * 100);
            CHECK(std::fabs(na[i] - nb[i]) <= 1e-12 * (1 + std::fabs(na[i])));
            for (int k = 0; k < 3; ++k)
                CHECK(std::fabs(sa[3 * i + k] - sb[3 * i + k]) <= 1e-12 * (1 + std::fabs(sa[3 * i + k])));
        }
    }
    auto before = kernels::active_isa();
    CHECK(kernels::set_isa(kernels::Isa::Scalar));
    CHECK(kernels::active_isa() == kernels::Isa::Scalar);
    kernels::set_isa(before);
}

TEST_CASE("batched embedding norms approximate exact norms")
{
    auto O = order(43);
    std::mt19937_64 rng(8);
    std::vector<double> vecs;
    std::vector<ZVec> xs;
    for (int t = 0; t < 37; ++t) {
        ZVec x(6);
        for (auto& c : x) c = (long)(rng() % 21) - 10;
        xs.push_back(x);
        for (auto& c : x) vecs.push_back(c.get_d());
    }
    std::vector<double> sq(3 * xs.size()), nrm(xs.size());
    kernels::embedding_norms_batch(&O->basis_embedding_d()[0][0][0], vecs.data(), xs.size(), sq.data(), nrm.data());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double exact = O->norm(xs[i]).get_d();
        CHECK(std::fabs(nrm[i] - std::fabs(exact)) <= 1e-6 * (1 + std::fabs(exact)));
    }
}
