#include "symsplit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "symsplit/errors.hpp"
#include "symsplit/kernels.hpp"
#include "symsplit/numtheory.hpp"

namespace symsplit {

// ---------------------------------------------------------------- LLL

bool lovasz_condition_holds(const ZMat& G, long a, long b)
{
    std::size_t n = G.size();
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> B(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            mpq_class s = G[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * B[k];
            mu[i][j] = s / B[j];
        }
        mpq_class s = G[i][i];
        for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * B[k];
        B[i] = s;
        if (B[i] <= 0) return false;
    }
    mpq_class delta(a, b);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (abs(mu[i][j]) > mpq_class(1, 2)) return false;
        if (B[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) return false;
    }
    return true;
}

LllResult lll_gram(const ZMat& G0, long a, long b)
{
    const int n = (int)G0.size();
    LllResult res{G0, identity(n)};
    if (n == 0) return res;
    ZMat& G = res.gram;
    ZMat& H = res.transform;
    // 1-based bookkeeping as in the integral algorithm
    std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1));
    std::vector<mpz_class> d(n + 1);
    auto g = [&](int i, int j) -> mpz_class& { return G[i - 1][j - 1]; };
    d[0] = 1;
    d[1] = g(1, 1);
    if (d[1] <= 0) fail(ErrorCode::InvalidArgument, "Gram matrix not positive definite");

    auto red = [&](int k, int l) {
        mpz_class two = 2 * abs(lam[k][l]);
        if (two <= d[l]) return;
        mpz_class q = round_div(lam[k][l], d[l]);
        for (int t = 0; t < n; ++t) H[k - 1][t] -= q * H[l - 1][t];
        for (int t = 1; t <= n; ++t) g(k, t) -= q * g(l, t);
        for (int t = 1; t <= n; ++t) g(t, k) -= q * g(t, l);
        lam[k][l] -= q * d[l];
        for (int i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };
    int kmax = 1;
    auto swap = [&](int k) {
        std::swap(H[k - 1], H[k - 2]);
        std::swap(G[k - 1], G[k - 2]);
        for (auto& row : G) std::swap(row[k - 1], row[k - 2]);
        for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        mpz_class L = lam[k][k - 1];
        mpz_class B = (d[k - 2] * d[k] + L * L);
        mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d[k - 1].get_mpz_t());
        for (int i = k + 1; i <= kmax; ++i) {
            mpz_class t = lam[i][k];
            mpz_class x = d[k] * lam[i][k - 1] - L * t;
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d[k - 1].get_mpz_t());
            lam[i][k] = x;
            mpz_class y = B * t + L * lam[i][k];
            mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), d[k].get_mpz_t());
            lam[i][k - 1] = y;
        }
        d[k - 1] = B;
    };

    int k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 1; j <= k; ++j) {
                mpz_class u = g(k, j);
                for (int i = 1; i < j; ++i) {
                    u = d[i] * u - lam[k][i] * lam[j][i];
                    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i - 1].get_mpz_t());
                }
                if (j < k) lam[k][j] = u;
                else {
                    if (u <= 0) fail(ErrorCode::InvalidArgument, "Gram matrix not positive definite");
                    d[k] = u;
                }
            }
        }
        for (;;) {
            red(k, k - 1);
            mpz_class lhs = b * d[k] * d[k - 2];
            mpz_class rhs = a * d[k - 1] * d[k - 1] - b * lam[k][k - 1] * lam[k][k - 1];
            if (lhs < rhs) {
                swap(k);
                k = std::max(2, k - 1);
                continue;
            }
            for (int l = k - 2; l >= 1; --l) red(k, l);
            ++k;
            break;
        }
    }
    SYMSPLIT_CHECK(lovasz_condition_holds(G, a, b), "LLL output satisfies the Lovasz condition");
    SYMSPLIT_CHECK(abs(det(H)) == 1, "LLL transformation is unimodular");
    return res;
}

ZMat lll_rows(const ZMat& rows, LllResult* info)
{
    std::size_t n = rows.size();
    ZMat G = zmat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            mpz_class s = 0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) s += rows[i][k] * rows[j][k];
            G[i][j] = G[j][i] = s;
        }
    LllResult r = lll_gram(G);
    ZMat out = mul(r.transform, rows);
    if (info) *info = std::move(r);
    return out;
}

// ---------------------------------------------------------------- enumeration

std::vector<ZVec> enumerate_short_vectors(const ZMat& G, const mpz_class& bound, std::uint64_t node_cap,
                                          EnumerationStats* stats)
{
    const int n = (int)G.size();
    std::vector<ZVec> out;
    if (bound <= 0 || n == 0) return out;
    using ld = long double;
    // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    std::vector<std::vector<ld>> q(n, std::vector<ld>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q[i][j] = (ld)G[i][j].get_d();
    for (int i = 0; i < n; ++i) {
        if (!(q[i][i] > 0)) fail(ErrorCode::InvalidArgument, "Gram matrix not positive definite");
        for (int j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    const ld C = (ld)bound.get_d() * (1 + 1e-9L) + 1e-6L;
    std::vector<long long> x(n, 0);
    std::uint64_t nodes = 0;
    std::vector<std::pair<mpz_class, ZVec>> found;

    std::function<void(int, ld, bool)> rec = [&](int i, ld T, bool zero_above) {
        ld c = 0;
        for (int j = i + 1; j < n; ++j) c -= q[i][j] * (ld)x[j];
        ld r = std::sqrt(std::max(T, (ld)0) / q[i][i]);
        ld eps = 1e-9L * (1 + std::fabs(c) + r);
        ld lo_d = std::ceil(c - r - eps), hi_d = std::floor(c + r + eps);
        if (hi_d - lo_d > 1e15L || std::fabs(lo_d) > 1e17L) throw BudgetExceeded("enumeration range too large");
        long long lo = (long long)lo_d, hi = (long long)hi_d;
        if (zero_above) lo = std::max(lo, 0LL);
        for (long long v = lo; v <= hi; ++v) {
            if (++nodes > node_cap) {
                if (stats) stats->nodes = nodes;
                throw BudgetExceeded("enumeration node cap exceeded");
            }
            x[i] = v;
            ld t = (ld)v - c;
            ld rem = T - q[i][i] * t * t;
            if (rem < -C * 1e-9L) continue;
            if (i == 0) {
                if (zero_above && v == 0) continue;
                ZVec z(n);
                for (int j = 0; j < n; ++j) z[j] = (long)x[j];
                mpz_class val = 0;
                for (int a = 0; a < n; ++a) {
                    if (z[a] == 0) continue;
                    mpz_class s = 0;
                    for (int b = 0; b < n; ++b)
                        if (z[b] != 0) s += G[a][b] * z[b];
                    val += z[a] * s;
                }
                if (val <= bound) found.emplace_back(std::move(val), std::move(z));
            } else {
                rec(i - 1, rem, zero_above && v == 0);
            }
        }
        x[i] = 0;
    };
    rec(n - 1, C, true);
    if (stats) stats->nodes = nodes;
    std::sort(found.begin(), found.end());
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

// ---------------------------------------------------------------- ideal lattices

namespace {

mpz_class real_to_mpz(const Real& r)
{
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
    return z;
}

} // namespace

GramLattice lattice_from_basis(const NumberFieldOrder& O, const ZMat& basis, const std::array<Real, 3>& weights)
{
    Real::default_precision(O.digits());
    const std::size_t n = basis.size();
    std::vector<std::array<Complex, 3>> e(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k) {
            Real re = 0, im = 0;
            for (int j = 0; j < 6; ++j) {
                if (basis[i][j] == 0) continue;
                Real c = to_real(basis[i][j]);
                re += c * O.basis_embedding(k, j).re;
                im += c * O.basis_embedding(k, j).im;
            }
            e[i][k] = {re, im};
        }
    std::vector<std::vector<Real>> G(n, std::vector<Real>(n));
    Real maxdiag = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Real s = 0;
            for (int k = 0; k < 3; ++k) s += weights[k] * (e[i][k].re * e[j][k].re + e[i][k].im * e[j][k].im);
            s *= 2;
            G[i][j] = G[j][i] = s;
            if (i == j && s > maxdiag) maxdiag = s;
        }
    GramLattice L;
    L.scale = boost::multiprecision::ldexp(Real(1), 100) / maxdiag;
    ZMat Gi = zmat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) Gi[i][j] = real_to_mpz(G[i][j] * L.scale);
    LllResult r = lll_gram(Gi);
    L.gram = std::move(r.gram);
    L.basis = mul(r.transform, basis);
    return L;
}

GramLattice ideal_lattice(const NumberFieldOrder& O, const IdealHNF& I, const std::array<Real, 3>& weights)
{
    ZMat B = I.is_unit_ideal() ? identity(6) : lll_rows(I.H);
    return lattice_from_basis(O, B, weights);
}

std::vector<ZVec> short_elements(const NumberFieldOrder& O, const IdealHNF& I, double factor, std::uint64_t node_cap,
                                 std::size_t limit)
{
    GramLattice L = ideal_lattice(O, I);
    mpz_class minq = L.gram[0][0];
    for (std::size_t i = 1; i < 6; ++i) minq = std::min(minq, L.gram[i][i]);
    mpz_class bound = mpz_class(minq.get_d() * factor) + 1;
    auto vs = enumerate_short_vectors(L.gram, bound, node_cap);
    std::vector<ZVec> out;
    for (auto& v : vs) {
        out.push_back(mul(v, L.basis));
        if (limit && out.size() >= limit) break;
    }
    return out;
}

std::array<double, 3> log_embedding(const NumberFieldOrder& O, const QVec& x)
{
    std::array<double, 3> l{};
    for (int k = 0; k < 3; ++k) {
        Complex z = O.embed(k, x);
        Real a = z.re * z.re + z.im * z.im;
        l[k] = boost::multiprecision::log(a).convert_to<double>();
    }
    return l;
}

Real t2_norm(const NumberFieldOrder& O, const QVec& x)
{
    Real s = 0;
    for (int k = 0; k < 3; ++k) {
        Complex z = O.embed(k, x);
        s += z.re * z.re + z.im * z.im;
    }
    return 2 * s;
}

// ---------------------------------------------------------------- units

namespace {

QVec to_qvec(const ZVec& v) { return QVec(v.begin(), v.end()); }

// Largest value of sum_k exp(d_k) over the cell c + s1 e1 + s2 e2, |s_i| <= 1.
// The function is convex, so a vertex attains the maximum.
double cell_bound(const std::array<double, 3>& e1, const std::array<double, 3>& e2)
{
    double best = 0;
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            double s = 0;
            for (int k = 0; k < 3; ++k) s += std::exp(s1 * e1[k] + s2 * e2[k]);
            best = std::max(best, s);
        }
    return 2 * best * (1 + 1e-9);
}

std::array<Real, 3> weights_for(const std::array<double, 3>& centre, double shift)
{
    std::array<Real, 3> w;
    for (int k = 0; k < 3; ++k) w[k] = boost::multiprecision::exp(Real(-(centre[k] + shift)));
    return w;
}

// Every element x of the lattice with 2 sum_k w_k |sigma_k x|^2 <= B.
std::vector<ZVec> weighted_enumeration(const NumberFieldOrder& O, const ZMat& basis, const std::array<Real, 3>& w,
                                       double B, std::uint64_t node_cap, std::uint64_t* nodes)
{
    GramLattice L = lattice_from_basis(O, basis, w);
    mpz_class bound = real_to_mpz(L.scale * Real(B)) + 1;
    EnumerationStats st;
    std::vector<ZVec> vs;
    try {
        vs = enumerate_short_vectors(L.gram, bound, node_cap, &st);
    } catch (...) {
        if (nodes) *nodes += st.nodes;
        throw;
    }
    if (nodes) *nodes += st.nodes;
    std::vector<ZVec> out;
    for (auto& v : vs) out.push_back(mul(v, L.basis));
    return out;
}

double plane_norm(const std::array<double, 3>& l) { return std::sqrt(l[0] * l[0] + l[1] * l[1]); }
double plane_det(const std::array<double, 3>& a, const std::array<double, 3>& b) { return a[0] * b[1] - a[1] * b[0]; }

} // namespace

UnitGroupData unit_group(const NumberFieldOrder& O, const Budgets& budgets)
{
    UnitGroupData U;
    U.torsion_generator = O.eps();
    for (auto& c : U.torsion_generator) c = -c;
    struct Found {
        ZVec u;
        std::array<double, 3> log;
    };
    std::vector<Found> found;
    const double half = 0.5;
    const std::array<double, 3> e1{half, 0, -half}, e2{0, half, -half};
    const double B = cell_bound(e1, e2);
    ZMat basis = identity(6);
    auto scan = [&](long i, long j) {
        std::array<double, 3> c{(double)i, (double)j, (double)(-i - j)};
        std::uint64_t nodes = 0;
        for (auto& x : weighted_enumeration(O, basis, weights_for(c, 0), B, budgets.node_cap, &nodes)) {
            mpz_class nx = O.norm(x);
            if (abs(nx) != 1) continue;
            auto l = log_embedding(O, to_qvec(x));
            if (std::max({std::fabs(l[0]), std::fabs(l[1]), std::fabs(l[2])}) < 1e-6) continue;
            bool dup = false;
            for (auto& f : found)
                if (std::fabs(f.log[0] - l[0]) < 1e-6 && std::fabs(f.log[1] - l[1]) < 1e-6) dup = true;
            if (!dup) found.push_back({x, l});
        }
        ++U.cells;
    };
    const Found* b1 = nullptr;
    const Found* b2 = nullptr;
    for (long R = 0; R <= (long)budgets.unit_radius_cap; ++R) {
        if (R == 0) scan(0, 0);
        for (long i = -R; i <= R && R > 0; ++i)
            for (long j = -R; j <= R; ++j)
                if (std::max(std::labs(i), std::labs(j)) == R) scan(i, j);
        U.scanned_radius = R + half;
        b1 = b2 = nullptr;
        auto better = [](const Found& a, const Found* b) {
            if (!b) return true;
            double na = plane_norm(a.log), nb = plane_norm(b->log);
            if (std::fabs(na - nb) > 1e-9) return na < nb;
            return a.u < b->u;
        };
        for (auto& f : found)
            if (better(f, b1)) b1 = &f;
        if (!b1) continue;
        for (auto& f : found) {
            if (std::fabs(plane_det(b1->log, f.log)) < 1e-6) continue;
            if (better(f, b2)) b2 = &f;
        }
        if (b2 && plane_norm(b2->log) < U.scanned_radius - 1e-9) {
            U.certified = true;
            break;
        }
    }
    if (!b2) throw BudgetExceeded("unit search found fewer than two independent units");
    U.fundamental = {b1->u, b2->u};
    U.logs = {b1->log, b2->log};
    U.regulator = unit_regulator(O, U.fundamental);
    return U;
}

Real unit_regulator(const NumberFieldOrder& O, const std::vector<ZVec>& fundamental)
{
    SYMSPLIT_CHECK(fundamental.size() == 2, "two fundamental units");
    Real::default_precision(O.digits());
    std::array<std::array<Real, 2>, 2> L;
    for (int t = 0; t < 2; ++t)
        for (int k = 0; k < 2; ++k) {
            Complex z = O.embed(k, to_qvec(fundamental[t]));
            L[t][k] = boost::multiprecision::log(z.re * z.re + z.im * z.im);
        }
    return boost::multiprecision::abs(L[0][0] * L[1][1] - L[0][1] * L[1][0]);
}

FieldElement unit_reduce(const NumberFieldOrder& O, const UnitGroupData& U, const FieldElement& x)
{
    if (U.fundamental.size() != 2 || x.is_zero()) return x;
    auto l = log_embedding(O, x.coords());
    double shift = (l[0] + l[1] + l[2]) / 3;
    double y0 = l[0] - shift, y1 = l[1] - shift;
    const auto& a = U.logs[0];
    const auto& b = U.logs[1];
    double D = plane_det(a, b);
    double c1 = (y0 * b[1] - y1 * b[0]) / D;
    double c2 = (a[0] * y1 - a[1] * y0) / D;
    long k1 = std::lround(c1), k2 = std::lround(c2);
    if (k1 == 0 && k2 == 0) return x;
    const OrderPtr& o = x.order();
    FieldElement u1(o, U.fundamental[0]), u2(o, U.fundamental[1]);
    return x * u1.pow(-k1) * u2.pow(-k2);
}

// ---------------------------------------------------------------- principality

const char* principal_status_name(PrincipalStatus s)
{
    switch (s) {
    case PrincipalStatus::Principal: return "principal";
    case PrincipalStatus::NotPrincipal: return "not_principal";
    default: return "indeterminate";
    }
}

ReducedIdeal reduce_ideal(const NumberFieldOrder& O, OrderPtr optr, const IdealHNF& I, const Budgets& budgets)
{
    (void)budgets;
    FieldElement one(optr, O.one());
    if (I.is_unit_ideal()) return {I, one};
    GramLattice L = ideal_lattice(O, I);
    ZVec x = L.basis[0];
    IdealHNF A1 = ideal_times_inverse(O, x, I);
    if (A1.is_unit_ideal()) return {A1, FieldElement(optr, x)};
    GramLattice L1 = ideal_lattice(O, A1);
    ZVec y = L1.basis[0];
    IdealHNF A2 = ideal_times_inverse(O, y, A1);
    FieldElement g = FieldElement(optr, x) * FieldElement(optr, y).inverse();
    return {A2, g};
}

namespace {

PrincipalResult search_generator(OrderPtr optr, const UnitGroupData& U, const IdealHNF& A, const Budgets& budgets)
{
    const NumberFieldOrder& O = *optr;
    PrincipalResult res;
    if (A.is_unit_ideal()) {
        res.status = PrincipalStatus::Principal;
        res.generator = FieldElement(optr, O.one());
        return res;
    }
    ZMat basis = lll_rows(A.H);
    double logN3 = std::log(A.norm.get_d()) / 3;
    if (U.fundamental.size() != 2) fail(ErrorCode::PreconditionFailed, "unit group not available");
    const auto& l1 = U.logs[0];
    const auto& l2 = U.logs[1];
    const double delta = 1.0;
    auto inf = [](const std::array<double, 3>& v) { return std::max({std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2])}); };
    long n1 = std::max(1L, (long)std::ceil(inf(l1) / delta));
    long n2 = std::max(1L, (long)std::ceil(inf(l2) / delta));
    if ((std::uint64_t)(n1 * n2) > budgets.cell_cap) {
        res.trace = "cell count exceeds cell_cap";
        return res;
    }
    std::array<double, 3> e1, e2;
    for (int k = 0; k < 3; ++k) {
        e1[k] = l1[k] / (2.0 * n1);
        e2[k] = l2[k] / (2.0 * n2);
    }
    res.bound = cell_bound(e1, e2);
    std::vector<std::pair<double, std::pair<long, long>>> cells;
    for (long t1 = 0; t1 < n1; ++t1)
        for (long t2 = 0; t2 < n2; ++t2) {
            double a1 = -0.5 + (t1 + 0.5) / n1, a2 = -0.5 + (t2 + 0.5) / n2;
            cells.push_back({std::fabs(a1) + std::fabs(a2), {t1, t2}});
        }
    std::sort(cells.begin(), cells.end());
    for (auto& [dist, tt] : cells) {
        (void)dist;
        double a1 = -0.5 + (tt.first + 0.5) / n1, a2 = -0.5 + (tt.second + 0.5) / n2;
        std::array<double, 3> c;
        for (int k = 0; k < 3; ++k) c[k] = a1 * l1[k] + a2 * l2[k];
        std::vector<ZVec> xs;
        try {
            xs = weighted_enumeration(O, basis, weights_for(c, logN3), res.bound, budgets.node_cap, &res.nodes);
        } catch (const BudgetExceeded&) {
            res.status = PrincipalStatus::Indeterminate;
            res.trace = "enumeration node cap exceeded";
            return res;
        }
        ++res.cells;
        for (auto& x : xs) {
            if (abs(O.norm(x)) != A.norm) continue;
            SYMSPLIT_CHECK(principal_ideal(O, x) == A, "generator refolds to the ideal");
            res.status = PrincipalStatus::Principal;
            res.generator = FieldElement(optr, x);
            std::ostringstream os;
            os << "generator found in cell " << res.cells << " of " << n1 * n2;
            res.trace = os.str();
            return res;
        }
    }
    res.status = PrincipalStatus::NotPrincipal;
    std::ostringstream os;
    os << "no generator in " << n1 * n2 << " cells covering the unit fundamental domain, bound " << res.bound;
    res.trace = os.str();
    return res;
}

} // namespace

PrincipalResult is_principal(OrderPtr optr, const UnitGroupData& U, const IdealHNF& I, const Budgets& budgets)
{
    const NumberFieldOrder& O = *optr;
    ReducedIdeal R = reduce_ideal(O, optr, I, budgets);
    PrincipalResult res = search_generator(optr, U, R.A, budgets);
    if (res.status != PrincipalStatus::Principal) return res;
    FieldElement gen = unit_reduce(O, U, R.g * res.generator);
    SYMSPLIT_CHECK(gen.is_integral(), "generator of an integral ideal is integral");
    SYMSPLIT_CHECK(principal_ideal(O, gen.integral_coords()) == I, "generator refolds to the ideal");
    res.generator = gen;
    return res;
}

PrincipalResult principal_generator_of_product(OrderPtr optr, const UnitGroupData& U,
                                               const std::vector<IdealPower>& factors, const Budgets& budgets)
{
    const NumberFieldOrder& O = *optr;
    ReducedIdeal acc{unit_ideal(), FieldElement(optr, O.one())};
    auto mul = [&](const ReducedIdeal& a, const ReducedIdeal& b) {
        ReducedIdeal r = reduce_ideal(O, optr, ideal_mul(O, a.A, b.A), budgets);
        r.g = r.g * a.g * b.g;
        return r;
    };
    mpz_class total_norm = 1;
    std::map<const PrimeIdeal*, unsigned long> expo;
    for (auto& f : factors) {
        if (f.exponent == 0) continue;
        expo[f.prime] += f.exponent;
        mpz_class pn;
        mpz_pow_ui(pn.get_mpz_t(), f.prime->norm().get_mpz_t(), f.exponent);
        total_norm *= pn;
        ReducedIdeal base{f.prime->ideal, FieldElement(optr, O.one())};
        ReducedIdeal power{unit_ideal(), FieldElement(optr, O.one())};
        unsigned long e = f.exponent;
        while (e) {
            if (e & 1) power = mul(power, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        acc = mul(acc, power);
    }
    PrincipalResult res = search_generator(optr, U, acc.A, budgets);
    if (res.status != PrincipalStatus::Principal) return res;
    FieldElement gen = unit_reduce(O, U, acc.g * res.generator);
    SYMSPLIT_CHECK(gen.is_integral(), "generator of an integral ideal is integral");
    ZVec gz = gen.integral_coords();
    SYMSPLIT_CHECK(abs(O.norm(gz)) == total_norm, "generator has the norm of the product");
    for (auto& [P, e] : expo) SYMSPLIT_CHECK(valuation(O, *P, gz) >= e, "generator has the prescribed valuations");
    res.generator = gen;
    return res;
}

} // namespace symsplit
