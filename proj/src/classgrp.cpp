#include "symsplit/classgrp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "symsplit/errors.hpp"
#include "symsplit/kernels.hpp"
#include "symsplit/numtheory.hpp"

namespace symsplit {

double minkowski_bound(const NumberFieldOrder& O)
{
    const double pi = std::acos(-1.0);
    double d = std::fabs(O.discriminant().get_d());
    return std::pow(4 / pi, 3) * 720.0 / 46656.0 * std::sqrt(d);
}

namespace {

// Residue degree of the primes above p in L for p not dividing 3m.
unsigned unramified_degree(const mpz_class& m, u64 p)
{
    if (p % 3 == 2) return 2;
    u64 r = mpz_class(mod_floor(m, p)).get_ui();
    return powmod(r, (p - 1) / 3, p) == 1 ? 1 : 3;
}

bool divides_3m(const mpz_class& m, u64 p) { return p == 3 || mpz_divisible_ui_p(m.get_mpz_t(), p); }

bool ideal_less(const PrimeIdeal& a, const PrimeIdeal& b)
{
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    if (a.p != b.p) return a.p < b.p;
    return a.ideal.H < b.ideal.H;
}

using Factorization = std::vector<std::pair<std::size_t, long>>;
using Sparse = std::map<std::size_t, mpz_class>; // factor-base index in S -> exponent

class Harvester {
public:
    Harvester(OrderPtr O, ClassGroupData& cg, const Budgets& b)
        : optr_(O), O_(*O), cg_(cg), budgets_(b), rng_(0x5eed0000u + mpz_class(abs(O->m())).get_ui())
    {
    }

    void build_factor_base()
    {
        cg_.minkowski_bound = minkowski_bound(O_);
        u64 mb = (u64)std::floor(cg_.minkowski_bound);
        const mpz_class& m = O_.m();
        for (u64 p : primes_up_to(std::max<u64>(mb, 2))) {
            std::vector<PrimeIdeal> ps;
            if (divides_3m(m, p) || mpz_divisible_ui_p(O_.index().get_mpz_t(), p)) {
                ps = primes_above(O_, p);
                mpz_class least = ps[0].norm();
                for (auto& P : ps) least = std::min(least, P.norm());
                if (least > mb) continue;
            } else {
                unsigned f = unramified_degree(m, p);
                mpz_class q;
                mpz_ui_pow_ui(q.get_mpz_t(), p, f);
                if (q > mb) continue;
                ps = factor_prime_in_L(O_, p);
            }
            for (auto& P : ps) cg_.factor_base.push_back(P);
        }
        std::sort(cg_.factor_base.begin(), cg_.factor_base.end(), ideal_less);
        for (std::size_t i = 0; i < cg_.factor_base.size(); ++i)
            by_p_[cg_.factor_base[i].p.get_ui()].push_back(i);
        for (auto& [p, v] : by_p_) rational_.push_back(p);
        cg_.sigma.resize(cg_.factor_base.size());
        for (std::size_t i = 0; i < cg_.factor_base.size(); ++i) {
            IdealHNF s = ideal_sigma(O_, cg_.factor_base[i].ideal);
            bool found = false;
            for (std::size_t j : by_p_[cg_.factor_base[i].p.get_ui()])
                if (cg_.factor_base[j].ideal == s) {
                    cg_.sigma[i] = j;
                    found = true;
                }
            SYMSPLIT_CHECK(found, "sigma permutes the primes above p");
        }
    }

    // Valuations of x over the factor base (plus an optional extra prime),
    // nullopt unless (x) is smooth.
    std::optional<Factorization> factor(const ZVec& x, const PrimeIdeal* extra = nullptr, long* extra_v = nullptr)
    {
        mpz_class N = abs(O_.norm(x));
        if (N == 0) return std::nullopt;
        Factorization out;
        if (extra) {
            long v = valuation(O_, *extra, x);
            for (long i = 0; i < v; ++i) {
                SYMSPLIT_CHECK(mpz_divisible_p(N.get_mpz_t(), extra->norm().get_mpz_t()), "valuation matches norm");
                mpz_divexact(N.get_mpz_t(), N.get_mpz_t(), extra->norm().get_mpz_t());
            }
            *extra_v = v;
            if (!by_p_.count(extra->p.get_ui()) && mpz_divisible_p(N.get_mpz_t(), extra->p.get_mpz_t()))
                return std::nullopt;
        }
        for (u64 p : rational_) {
            if (N == 1) break;
            if (!mpz_divisible_ui_p(N.get_mpz_t(), p)) continue;
            unsigned e = 0;
            while (mpz_divisible_ui_p(N.get_mpz_t(), p)) {
                mpz_divexact_ui(N.get_mpz_t(), N.get_mpz_t(), p);
                ++e;
            }
            unsigned acc = 0;
            for (std::size_t j : by_p_[p]) {
                const PrimeIdeal& Q = cg_.factor_base[j];
                if (extra && Q.ideal == extra->ideal) continue;
                unsigned v = valuation(O_, Q, x);
                if (v) out.push_back({j, (long)v});
                acc += v * Q.f;
            }
            SYMSPLIT_CHECK(acc == e, "prime valuations account for the norm");
        }
        if (N != 1) return std::nullopt;
        return out;
    }

    std::array<Real, 3> random_weights()
    {
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        std::array<Real, 3> w;
        for (auto& x : w) x = Real(std::exp(u(rng_)));
        return w;
    }

    // Short elements of I under the given weights, those with the smallest
    // norm first (screened in double precision).
    std::vector<ZVec> candidates(const IdealHNF& I, const std::array<Real, 3>& w, std::size_t limit)
    {
        GramLattice L = ideal_lattice(O_, I, w);
        mpz_class minq = L.gram[0][0];
        for (std::size_t i = 1; i < 6; ++i) minq = std::min(minq, L.gram[i][i]);
        mpz_class bound = mpz_class(minq.get_d() * 2.5) + 1;
        std::vector<ZVec> vs;
        try {
            vs = enumerate_short_vectors(L.gram, bound, budgets_.node_cap / 100 + 1000);
        } catch (const BudgetExceeded&) {
            return {};
        }
        std::vector<ZVec> xs;
        std::vector<double> flat;
        for (auto& v : vs) {
            xs.push_back(mul(v, L.basis));
            for (auto& c : xs.back()) flat.push_back(c.get_d());
        }
        std::vector<double> sq(3 * xs.size()), nrm(xs.size());
        kernels::embedding_norms_batch(&O_.basis_embedding_d()[0][0][0], flat.data(), xs.size(), sq.data(), nrm.data());
        std::vector<std::size_t> order(xs.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nrm[a] < nrm[b]; });
        std::vector<ZVec> out;
        for (std::size_t i = 0; i < order.size() && out.size() < limit; ++i) out.push_back(xs[order[i]]);
        return out;
    }

    bool budget_left() const { return cg_.candidates_tried < budgets_.harvest_cap; }

    // Rewrite P (not yet known) in terms of known primes through a smooth
    // element x with v_P(x) = 1.
    std::optional<Sparse> eliminate(const PrimeIdeal& P, std::optional<std::size_t> self, int rounds)
    {
        std::uniform_int_distribution<std::size_t> pick(0, small_.size() - 1);
        for (int r = 0; r < rounds && budget_left(); ++r) {
            IdealHNF I = P.ideal;
            std::array<Real, 3> w{Real(1), Real(1), Real(1)};
            if (r % 3 == 1) w = random_weights();
            if (r % 3 == 2) I = ideal_mul(O_, I, cg_.factor_base[small_[pick(rng_)]].ideal);
            for (auto& x : candidates(I, w, 40)) {
                ++cg_.candidates_tried;
                std::optional<Factorization> fac;
                long vP = 0;
                if (self) {
                    fac = factor(x);
                    if (!fac) continue;
                    for (auto& [j, v] : *fac)
                        if (j == *self) vP = v;
                } else {
                    fac = factor(x, &P, &vP);
                    if (!fac) continue;
                }
                if (vP != 1) continue;
                Sparse s;
                bool ok = true;
                for (auto& [j, v] : *fac) {
                    if (self && j == *self) continue;
                    if (!known_[j]) {
                        ok = false;
                        break;
                    }
                    for (auto& [k, c] : sub_[j]) s[k] -= v * c;
                }
                if (!ok) continue;
                for (auto it = s.begin(); it != s.end();) it = (it->second == 0) ? s.erase(it) : std::next(it);
                return s;
            }
        }
        return std::nullopt;
    }

    Sparse permute(const Sparse& s) const
    {
        Sparse t;
        for (auto& [k, c] : s) t[cg_.sigma[k]] = c;
        return t;
    }

    void choose_small_and_eliminate()
    {
        const auto& fb = cg_.factor_base;
        std::size_t n = fb.size();
        known_.assign(n, false);
        sub_.assign(n, {});
        is_small_.assign(n, false);
        double s_bound = std::min(cg_.minkowski_bound, 100.0);
        auto make_small = [&](std::size_t i) {
            is_small_[i] = known_[i] = true;
            sub_[i] = {{i, 1}};
        };
        for (std::size_t i = 0; i < n; ++i)
            if (fb[i].norm().get_d() <= s_bound) make_small(i);
        refresh_small();
        for (std::size_t i = 0; i < n; ++i) {
            if (known_[i]) continue;
            auto s = eliminate(fb[i], i, 12);
            if (!s) {
                for (std::size_t j = i, k = 0; k < 3; ++k, j = cg_.sigma[j]) make_small(j);
                refresh_small();
                continue;
            }
            Sparse cur = *s;
            for (std::size_t j = i, k = 0; k < 3; ++k, j = cg_.sigma[j]) {
                if (!known_[j]) {
                    sub_[j] = cur;
                    known_[j] = true;
                }
                cur = permute(cur);
            }
        }
    }

    void refresh_small()
    {
        small_.clear();
        for (std::size_t i = 0; i < is_small_.size(); ++i)
            if (is_small_[i]) small_.push_back(i);
    }

    ZVec dense(const Sparse& s) const
    {
        ZVec v(small_.size(), 0);
        for (auto& [k, c] : s) {
            auto it = std::lower_bound(small_.begin(), small_.end(), k);
            SYMSPLIT_CHECK(it != small_.end() && *it == k, "substitution is supported on S");
            v[it - small_.begin()] += c;
        }
        return v;
    }

    ZVec relation_of(const Factorization& fac) const
    {
        Sparse s;
        for (auto& [j, v] : fac)
            for (auto& [k, c] : sub_[j]) s[k] += v * c;
        return dense(s);
    }

    ZVec permute_dense(const ZVec& v) const
    {
        ZVec out(v.size(), 0);
        for (std::size_t a = 0; a < small_.size(); ++a) {
            std::size_t b = std::lower_bound(small_.begin(), small_.end(), cg_.sigma[small_[a]]) - small_.begin();
            out[b] = v[a];
        }
        return out;
    }

    OrderPtr optr_;
    const NumberFieldOrder& O_;
    ClassGroupData& cg_;
    const Budgets& budgets_;
    std::mt19937_64 rng_;
    std::map<u64, std::vector<std::size_t>> by_p_;
    std::vector<u64> rational_;
    std::vector<bool> known_, is_small_;
    std::vector<Sparse> sub_;
    std::vector<std::size_t> small_;
};

// Echelon form of a growing integer lattice; once full rank, entries are kept
// reduced modulo the determinant.
class RelationLattice {
public:
    explicit RelationLattice(std::size_t n) : n_(n), rows_(n) {}

    bool full() const { return rank_ == n_; }
    const mpz_class& det() const { return det_; }

    // true when the lattice grew
    bool add(ZVec r)
    {
        bool changed = false;
        if (full()) reduce(r, 0);
        for (std::size_t c = 0; c < n_; ++c) {
            if (r[c] == 0) continue;
            ZVec& row = rows_[c];
            if (row.empty()) {
                if (r[c] < 0)
                    for (auto& x : r) x = -x;
                row = r;
                ++rank_;
                if (full()) recompute_det();
                return true;
            }
            const mpz_class a = row[c], b = r[c];
            if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
                mpz_class q = b / a;
                for (std::size_t k = c; k < n_; ++k) r[k] -= q * row[k];
            } else {
                mpz_class g, s, t;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                mpz_class ag = a / g, bg = b / g;
                for (std::size_t k = c; k < n_; ++k) {
                    mpz_class x = row[k], y = r[k];
                    row[k] = s * x + t * y;
                    r[k] = ag * y - bg * x;
                }
                if (row[c] < 0)
                    for (std::size_t k = c; k < n_; ++k) row[k] = -row[k];
                changed = true;
                if (full()) {
                    recompute_det();
                    reduce(row, c + 1);
                }
            }
            if (full()) reduce(r, c + 1);
        }
        return changed;
    }

    ZMat hnf() const
    {
        SYMSPLIT_CHECK(full(), "relation lattice has full rank");
        ZMat H = hnf_mod(rows_, det_, n_);
        mpz_class d = 1;
        for (std::size_t i = 0; i < n_; ++i) d *= H[i][i];
        SYMSPLIT_CHECK(d == det_, "modular HNF keeps the determinant");
        return H;
    }

private:
    void recompute_det()
    {
        det_ = 1;
        for (std::size_t i = 0; i < n_; ++i) det_ *= rows_[i][i];
    }
    void reduce(ZVec& v, std::size_t from) const
    {
        for (std::size_t k = from; k < n_; ++k) v[k] = mod_floor(v[k], det_);
    }

    std::size_t n_;
    std::vector<ZVec> rows_;
    std::size_t rank_ = 0;
    mpz_class det_ = 0;
};

void build_invariants(ClassGroupData& cg)
{
    std::size_t n = cg.small.size();
    SnfResult S = snf(cg.relations);
    QMat Vi = inverse(to_q(S.V));
    std::vector<std::size_t> active;
    cg.elementary_divisors.clear();
    for (std::size_t i = 0; i < n; ++i)
        if (S.diag[i] > 1) {
            active.push_back(i);
            cg.elementary_divisors.push_back(S.diag[i]);
        }
    cg.h_L = 1;
    for (auto& d : cg.elementary_divisors) cg.h_L *= d;
    std::size_t r = active.size();
    cg.to_invariants = zmat(n, r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r; ++k) cg.to_invariants[i][k] = S.V[i][active[k]];
    mpz_class e = r ? cg.elementary_divisors.back() : mpz_class(1);
    cg.generators = zmat(r, n);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& q = Vi[active[k]][j];
            SYMSPLIT_CHECK(q.get_den() == 1, "SNF transform is unimodular");
            cg.generators[k][j] = mod_floor(q.get_num(), e);
        }
    for (std::size_t k = 0; k < r; ++k) {
        ZVec c = cg.invariants_of(cg.generators[k]);
        for (std::size_t j = 0; j < r; ++j) SYMSPLIT_CHECK(c[j] == (j == k ? 1 : 0), "generators map to unit vectors");
    }
    // sigma permutes S, so the action on invariants is read off the generators
    std::vector<std::size_t> pos(cg.factor_base.size(), n);
    for (std::size_t a = 0; a < n; ++a) pos[cg.small[a]] = a;
    cg.sigma_action = zmat(r, r);
    for (std::size_t k = 0; k < r; ++k) {
        ZVec img(n, 0);
        for (std::size_t a = 0; a < n; ++a) img[pos[cg.sigma[cg.small[a]]]] = cg.generators[k][a];
        cg.sigma_action[k] = cg.invariants_of(img);
    }
}

// Elements of prime order in the candidate group, one per cyclic subgroup.
std::vector<ZVec> prime_order_elements(const ClassGroupData& cg)
{
    std::vector<ZVec> out;
    std::size_t r = cg.rank();
    for (auto& [ell, e] : factor_integer(cg.h_L)) {
        (void)e;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < r; ++i)
            if (mpz_divisible_p(cg.elementary_divisors[i].get_mpz_t(), ell.get_mpz_t())) idx.push_back(i);
        unsigned long l = ell.get_ui();
        std::size_t k = idx.size();
        std::vector<unsigned long> digits(k, 0);
        // projective points of F_l^k: first nonzero coordinate equal to 1
        while (true) {
            std::size_t t = 0;
            while (t < k) {
                if (++digits[t] < l) break;
                digits[t++] = 0;
            }
            if (t == k) break;
            std::size_t lead = k;
            for (std::size_t i = k; i-- > 0;)
                if (digits[i]) {
                    lead = i;
                    break;
                }
            if (lead == k || digits[lead] != 1) continue;
            ZVec c(r, 0);
            for (std::size_t i = 0; i < k; ++i) c[idx[i]] = digits[i] * (cg.elementary_divisors[idx[i]] / ell);
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

ZVec ClassGroupData::reduce(ZVec c) const
{
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i], elementary_divisors[i]);
    return c;
}

ZVec ClassGroupData::invariants_of(const ZVec& x) const { return reduce(mul(x, to_invariants)); }

mpz_class ClassGroupData::order_of(const ZVec& c) const
{
    mpz_class o = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        mpz_class g = gcd(c[i], elementary_divisors[i]);
        mpz_class t = elementary_divisors[i] / g;
        o = lcm(o, t);
    }
    return o;
}

ZVec ClassGroupData::representative(const ZVec& c) const
{
    ZVec x(small.size(), 0);
    if (rank() == 0) return x;
    x = mul(reduce(c), generators);
    for (auto& v : x) v = mod_floor(v, elementary_divisors.back());
    return x;
}

std::optional<std::size_t> ClassGroupData::index_of(const PrimeIdeal& P) const
{
    for (std::size_t i = 0; i < factor_base.size(); ++i)
        if (factor_base[i].p == P.p && factor_base[i].ideal == P.ideal) return i;
    return std::nullopt;
}

double analytic_hR_estimate(const NumberFieldOrder& O, std::uint64_t bound)
{
    const mpz_class& m = O.m();
    double logres = 0;
    for (u64 p : primes_up_to(bound)) {
        double s = std::log1p(-1.0 / (double)p);
        if (divides_3m(m, p) || mpz_divisible_ui_p(O.index().get_mpz_t(), p)) {
            for (auto& P : primes_above(O, p)) s -= std::log1p(-1.0 / P.norm().get_d());
        } else {
            unsigned f = unramified_degree(m, p);
            s -= (6 / f) * std::log1p(-std::pow((double)p, -(double)f));
        }
        logres += s;
    }
    const double pi = std::acos(-1.0);
    double d = std::fabs(O.discriminant().get_d());
    return 6 * std::sqrt(d) * std::exp(logres) / std::pow(2 * pi, 3);
}

ClassGroupData class_group(OrderPtr optr, const UnitGroupData& U, const Budgets& budgets)
{
    const NumberFieldOrder& O = *optr;
    ClassGroupData cg;
    Harvester hv(optr, cg, budgets);
    hv.build_factor_base();
    hv.choose_small_and_eliminate();
    cg.small = hv.small_;
    cg.substitution.resize(cg.factor_base.size());
    for (std::size_t i = 0; i < cg.factor_base.size(); ++i) {
        if (!hv.known_[i]) {
            cg.note = "harvest budget exhausted while rewriting large primes";
            return cg;
        }
        cg.substitution[i] = hv.dense(hv.sub_[i]);
    }

    std::size_t n = cg.small.size();
    RelationLattice lat(n);
    auto add = [&](const ZVec& r) {
        ++cg.relations_found;
        return lat.add(r);
    };
    std::size_t last_change = 0;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> count(1, 3);
    auto stable = [&] {
        return lat.full() && cg.relations_found >= std::max<std::size_t>(last_change * 6 / 5, last_change + 10);
    };
    if (n == 0) {
        cg.note = "empty factor base";
    }
    while (n > 0 && !stable() && hv.budget_left()) {
        IdealHNF I = unit_ideal();
        int k = count(hv.rng_);
        for (int t = 0; t < k; ++t) I = ideal_mul(O, I, cg.factor_base[cg.small[pick(hv.rng_)]].ideal);
        for (auto& x : hv.candidates(I, hv.random_weights(), 20)) {
            ++cg.candidates_tried;
            auto fac = hv.factor(x);
            if (!fac) continue;
            ZVec r = hv.relation_of(*fac);
            for (int s = 0; s < 3; ++s) {
                if (add(r)) last_change = cg.relations_found;
                r = hv.permute_dense(r);
            }
        }
    }
    if (n > 0 && !stable()) {
        cg.note = "harvest budget exhausted before the relation lattice stabilized";
        return cg;
    }
    cg.complete = true;

    std::vector<ZVec> extra;
    for (int round = 0; round < 20; ++round) {
        if (n > 0) {
            for (auto& r : extra) lat.add(r);
            cg.relations = lat.hnf();
            build_invariants(cg);
        } else {
            cg.h_L = 1;
        }
        extra.clear();
        bool indeterminate = false;
        auto elems = prime_order_elements(cg);
        if (elems.size() > 64) {
            cg.note = "too many elements of prime order to certify";
            indeterminate = true;
            break;
        }
        for (auto& c : elems) {
            ZVec x = cg.representative(c);
            std::vector<IdealPower> f;
            for (std::size_t a = 0; a < n; ++a)
                if (x[a] != 0) f.push_back({&cg.factor_base[cg.small[a]], x[a].get_ui()});
            PrincipalResult pr = principal_generator_of_product(optr, U, f, budgets);
            if (pr.status == PrincipalStatus::Principal) {
                extra.push_back(x);
            } else if (pr.status == PrincipalStatus::Indeterminate) {
                indeterminate = true;
            }
        }
        if (!extra.empty()) continue;
        cg.certified = !indeterminate;
        if (indeterminate && cg.note.empty()) cg.note = "a principality test ran out of budget";
        break;
    }
    cg.analytic_ratio = cg.h_L.get_d() * U.regulator.convert_to<double>() / analytic_hR_estimate(O, 200000);
    return cg;
}

std::optional<ZVec> class_of_prime(OrderPtr optr, const ClassGroupData& cg, const PrimeIdeal& P, const Budgets& budgets)
{
    SYMSPLIT_CHECK(cg.complete, "class group data is complete");
    if (auto i = cg.index_of(P)) return cg.invariants_of(cg.substitution[*i]);
    ClassGroupData scratch = cg;
    scratch.candidates_tried = 0;
    Harvester hv(optr, scratch, budgets);
    for (std::size_t i = 0; i < scratch.factor_base.size(); ++i)
        hv.by_p_[scratch.factor_base[i].p.get_ui()].push_back(i);
    for (auto& [p, v] : hv.by_p_) hv.rational_.push_back(p);
    hv.small_ = cg.small;
    hv.known_.assign(cg.factor_base.size(), true);
    hv.sub_.resize(cg.factor_base.size());
    for (std::size_t i = 0; i < cg.factor_base.size(); ++i)
        for (std::size_t a = 0; a < cg.small.size(); ++a)
            if (cg.substitution[i][a] != 0) hv.sub_[i][cg.small[a]] = cg.substitution[i][a];
    auto s = hv.eliminate(P, std::nullopt, 60);
    if (!s) return std::nullopt;
    return cg.invariants_of(hv.dense(*s));
}

unsigned long gcd_with_degree(unsigned long h_p, unsigned long q) { return std::gcd(h_p, q); }

namespace {

std::vector<unsigned long> divisors(unsigned long n)
{
    std::vector<unsigned long> d;
    for (unsigned long k = 1; k * k <= n; ++k)
        if (n % k == 0) {
            d.push_back(k);
            if (k * k != n) d.push_back(n / k);
        }
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

ClassOrderResult class_order_of_prime(OrderPtr optr, const UnitGroupData& U, const ClassGroupData* cg,
                                      const mpz_class& p, const Budgets& budgets)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, "p must be prime");
    auto ps = primes_above(*optr, p);
    return class_order_of_ideal(optr, U, cg, ps[0], ps, budgets);
}

ClassOrderResult class_order_of_ideal(OrderPtr optr, const UnitGroupData& U, const ClassGroupData* cg,
                                      const PrimeIdeal& P, const std::vector<PrimeIdeal>& ps, const Budgets& budgets)
{
    ClassOrderResult res;
    res.p = P.p;
    res.prime = P;
    std::vector<unsigned long> ks;
    bool use_divisors = cg && cg->complete && cg->certified;
    if (use_divisors) {
        ks = divisors(cg->h_L.get_ui());
    } else {
        for (unsigned long k = 1; k <= budgets.hp_cap; ++k) ks.push_back(k);
    }
    auto principal = [&](const PrimeIdeal& P, unsigned long k) {
        return principal_generator_of_product(optr, U, {{&P, k}}, budgets);
    };
    for (unsigned long k : ks) {
        res.tested.push_back(k);
        PrincipalResult pr = principal(res.prime, k);
        if (pr.status == PrincipalStatus::Indeterminate) {
            res.note = "principality test for exponent " + std::to_string(k) + " ran out of budget";
            return res;
        }
        if (pr.status == PrincipalStatus::Principal) {
            res.h_p = k;
            res.generator = pr.generator;
            break;
        }
    }
    if (res.h_p == 0) {
        res.note = "no principal power up to hp_cap";
        return res;
    }
    // each prime above p has order exactly h_p: Q^h principal, Q^(h/l) not
    std::vector<unsigned long> maximal;
    for (auto& [l, e] : factor_integer(mpz_class(res.h_p))) {
        (void)e;
        maximal.push_back(res.h_p / l.get_ui());
    }
    bool all_determined = true;
    for (auto& Q : ps) {
        bool agrees = true;
        PrincipalResult top = principal(Q, res.h_p);
        if (top.status == PrincipalStatus::Indeterminate) all_determined = false;
        agrees = top.status == PrincipalStatus::Principal;
        for (unsigned long k : maximal) {
            PrincipalResult pr = principal(Q, k);
            if (pr.status == PrincipalStatus::Indeterminate) all_determined = false;
            if (pr.status == PrincipalStatus::Principal) agrees = false;
        }
        res.conjugate_agrees.push_back(agrees);
    }
    res.determined = all_determined;
    if (!all_determined) res.note = "a conjugate check ran out of budget";
    if (use_divisors) {
        auto c = class_of_prime(optr, *cg, res.prime, budgets);
        if (c) SYMSPLIT_CHECK(cg->order_of(*c) == res.h_p, "discrete logarithm agrees with the principality search");
    }
    return res;
}

} // namespace symsplit
