#include "symsplit/algebra.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "symsplit/errors.hpp"
#include "symsplit/numtheory.hpp"
#include "symsplit/residue.hpp"

namespace symsplit {

FieldContext::FieldContext(const mpz_class& m, const Budgets& budgets) : m_input_(m), budgets_(budgets)
{
    if (m == 0) fail(ErrorCode::InvalidArgument, "m must be nonzero");
    m_ = cube_free_part(m);
    if (abs(m_) == 1) fail(ErrorCode::InvalidArgument, "m is a perfect cube; L = K has degree 2");
    O_ = NumberFieldOrder::build(m_, budgets.digits);
}

const UnitGroupData& FieldContext::units()
{
    if (!U_) U_ = unit_group(*O_, budgets_);
    return *U_;
}

const ClassGroupData& FieldContext::class_group()
{
    if (!cg_) cg_ = symsplit::class_group(O_, units(), budgets_);
    return *cg_;
}

const char* tristate_name(Tristate t)
{
    switch (t) {
    case Tristate::No: return "no";
    case Tristate::Yes: return "yes";
    case Tristate::Unknown: return "unknown";
    }
    return "?";
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Split: return "Split";
    case Verdict::Division: return "Division";
    case Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

const char* rule_name(Rule r)
{
    switch (r) {
    case Rule::R3_1: return "R3.1";
    case Rule::P3_2: return "P3.2";
    case Rule::P3_5: return "P3.5";
    case Rule::P3_6: return "P3.6";
    case Rule::T3_7: return "T3.7";
    case Rule::P3_8: return "P3.8";
    case Rule::P3_9: return "P3.9";
    case Rule::NormOracle: return "NormOracle";
    }
    return "?";
}

namespace {

KElement k_inverse(const KElement& x)
{
    mpq_class n = x.norm();
    if (n == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in K");
    return {(x.a - x.b) / n, -x.b / n};
}

std::string class_str(const ZVec& c)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

// Rational prime below the prime pi of Z[w].
mpz_class rational_below(const EisensteinInt& pi)
{
    if (pi.b == 0) return abs(pi.a);
    return pi.norm();
}

// The subgroup H of units of Z[w] that are relative norms, each with an
// element realizing it. complete is false when some generator could not be
// computed within budget.
struct NormUnits {
    std::map<int, FieldElement> by_index; // unit_index(eta) -> element of norm eta
    bool complete = true;
    std::vector<std::string> trace;
};

void close_under_products(NormUnits& H)
{
    bool grown = true;
    while (grown) {
        grown = false;
        auto snapshot = H.by_index;
        for (auto& [i, x] : snapshot)
            for (auto& [j, y] : snapshot) {
                int k = (i + j) % 6;
                if (!H.by_index.count(k)) {
                    H.by_index[k] = x * y;
                    grown = true;
                }
            }
    }
}

EisensteinInt unit_of(const KElement& k)
{
    SYMSPLIT_CHECK(k.is_integral(), "relative norm of a unit is integral");
    EisensteinInt u = k.to_eisenstein();
    SYMSPLIT_CHECK(u.is_unit(), "relative norm is a unit");
    return u;
}

NormUnits norm_units(FieldContext& F)
{
    OrderPtr O = F.order();
    const UnitGroupData& U = F.units();
    NormUnits H;
    FieldElement one(O, O->one());
    H.by_index[0] = one;
    auto add = [&](const FieldElement& x, const char* what) {
        EisensteinInt eta = unit_of(x.relative_norm());
        int i = unit_index(eta);
        if (!H.by_index.count(i)) {
            H.by_index[i] = x;
            H.trace.push_back(std::string(what) + " has relative norm " + eta.str());
        }
    };
    add(FieldElement(O, U.torsion_generator), "-w");
    for (auto& u : U.fundamental) add(FieldElement(O, u), "fundamental unit");
    if (!U.certified) {
        H.complete = false;
        H.trace.push_back("unit group not certified");
    }
    close_under_products(H);
    if (H.by_index.size() == 6) return H;

    // ambiguous classes [B] (sigma-fixed): B^(1 - sigma) = B^2 sigma^2(B) / N(B) is principal
    const ClassGroupData& cg = F.class_group();
    if (!cg.complete || !cg.certified) {
        H.complete = false;
        H.trace.push_back("class group not certified; ambiguous classes skipped");
        return H;
    }
    std::size_t r = cg.rank();
    if (r == 0) return H;
    ZMat A = zmat(2 * r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) A[i][j] = cg.sigma_action[i][j] - (i == j ? 1 : 0);
        A[r + i][i] = cg.elementary_divisors[i];
    }
    ZMat K = left_kernel(A);
    for (auto& kv : K) {
        ZVec c(kv.begin(), kv.begin() + r);
        c = cg.reduce(c);
        if (cg.order_of(c) == 1) continue;
        ZVec x = cg.representative(c);
        std::vector<IdealPower> f;
        KElement n{1, 0};
        for (std::size_t a = 0; a < x.size(); ++a) {
            if (x[a] == 0) continue;
            std::size_t qi = cg.small[a];
            const PrimeIdeal& Q = cg.factor_base[qi];
            unsigned long e = x[a].get_ui();
            f.push_back({&Q, 2 * e});
            f.push_back({&cg.factor_base[cg.sigma[cg.sigma[qi]]], e});
            unsigned fk = Q.below.b == 0 ? 2 : 1;
            EisensteinInt nq = pow(Q.below, (Q.f / fk) * e);
            n = n * to_k(nq);
        }
        PrincipalResult pr = principal_generator_of_product(O, U, f, F.budgets());
        if (pr.status != PrincipalStatus::Principal) {
            SYMSPLIT_CHECK(pr.status == PrincipalStatus::Indeterminate, "B^(1 - sigma) is principal for ambiguous B");
            H.complete = false;
            H.trace.push_back("ambiguous class " + class_str(c) + ": principality test out of budget");
            continue;
        }
        FieldElement z = pr.generator * FieldElement::from_k(O, n).inverse();
        add(z, ("ambiguous class " + class_str(c)).c_str());
        close_under_products(H);
    }
    return H;
}

} // namespace

NormEquationResult solve_norm_equation(FieldContext& F, const EisensteinInt& target, bool allow_unit)
{
    NormEquationResult res;
    OrderPtr O = F.order();
    const Budgets& B = F.budgets();
    if (target.is_zero()) fail(ErrorCode::InvalidArgument, "target must be nonzero");
    if (target.norm() % 3 == 0) fail(ErrorCode::PreconditionFailed, "target must be prime to 3");

    EisensteinFactorization fac = factor(target, mpz_class(B.factor_bound));
    std::deque<PrimeIdeal> keep;
    std::vector<IdealPower> powers;
    FieldElement extra(O, O->one());
    std::vector<std::pair<const PrimeIdeal*, mpz_class>> classed;
    for (auto& [pi, a] : fac.factors) {
        EisensteinInt cpi = canonical(pi);
        mpz_class p = rational_below(cpi);
        std::vector<PrimeIdeal> above;
        for (auto& P : primes_above(*O, p))
            if (canonical(P.below) == cpi) above.push_back(P);
        SYMSPLIT_CHECK(!above.empty(), "some prime of L lies above pi");
        unsigned fk = cpi.b == 0 ? 2 : 1;
        unsigned frel = above[0].f / fk;
        std::ostringstream os;
        os << "(" << cpi.str() << ")^" << a << ": " << above.size() << " prime(s) of relative degree " << frel;
        if (frel == 3) {
            if (a % 3 != 0) {
                os << ", exponent not divisible by 3";
                res.trace.push_back(os.str());
                res.solvable = Tristate::No;
                return res;
            }
            extra = extra * FieldElement::from_k(O, to_k(pow(cpi, a / 3)));
        } else {
            SYMSPLIT_CHECK(frel == 1, "relative degrees are 1 or 3");
            keep.push_back(above[0]);
            powers.push_back({&keep.back(), a});
            classed.push_back({&keep.back(), a});
        }
        res.trace.push_back(os.str());
    }

    // N(P^a) = pi^a; the class of the product must lie in (1 - sigma) Cl(L)
    const ClassGroupData* cgp = nullptr;
    bool exact_no = true;
    KElement delta{1, 0};
    if (!powers.empty()) {
        const ClassGroupData& cg = F.class_group();
        if (!cg.complete) {
            res.trace.push_back("class group incomplete: " + cg.note);
            return res;
        }
        exact_no = cg.certified;
        cgp = &cg;
        std::size_t r = cg.rank();
        ZVec c0(r, 0);
        for (auto& [P, a] : classed) {
            auto c = class_of_prime(O, cg, *P, B);
            if (!c) {
                res.trace.push_back("no discrete logarithm for a prime above " + P->p.get_str());
                return res;
            }
            for (std::size_t i = 0; i < r; ++i) c0[i] += a * (*c)[i];
        }
        c0 = cg.reduce(c0);
        res.trace.push_back("class of the base ideal " + class_str(c0));
        if (r > 0) {
            ZMat A = zmat(2 * r, r);
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j) A[i][j] = (i == j ? 1 : 0) - cg.sigma_action[i][j];
                A[r + i][i] = cg.elementary_divisors[i];
            }
            ZVec rhs(r);
            for (std::size_t i = 0; i < r; ++i) rhs[i] = -c0[i];
            auto sol = solve_left(A, rhs);
            if (!sol) {
                res.trace.push_back("class not in (1 - sigma) Cl(L)");
                res.solvable = exact_no ? Tristate::No : Tristate::Unknown;
                return res;
            }
            ZVec k(sol->begin(), sol->begin() + r);
            k = cg.reduce(k);
            res.trace.push_back("correction by (1 - sigma) of " + class_str(k));
            // k (1 - sigma)[g] is the class of prod Q^2k sigma^2(Q)^k, of relative norm N(Q)^3k
            for (std::size_t j = 0; j < r; ++j) {
                if (k[j] == 0) continue;
                for (std::size_t a = 0; a < cg.small.size(); ++a) {
                    mpz_class e = k[j] * cg.generators[j][a];
                    if (e == 0) continue;
                    std::size_t qi = cg.small[a];
                    if (cg.sigma[qi] == qi) continue;
                    const PrimeIdeal& Q = cg.factor_base[qi];
                    powers.push_back({&Q, 2 * e.get_ui()});
                    powers.push_back({&cg.factor_base[cg.sigma[cg.sigma[qi]]], e.get_ui()});
                    delta = delta * to_k(pow(Q.below, e.get_ui()));
                }
            }
        }
    }

    PrincipalResult pr = principal_generator_of_product(O, F.units(), powers, B);
    if (pr.status == PrincipalStatus::Indeterminate) {
        res.trace.push_back("principality test out of budget: " + pr.trace);
        return res;
    }
    if (pr.status == PrincipalStatus::NotPrincipal) {
        SYMSPLIT_CHECK(!cgp || !cgp->certified, "ideal of trivial class is principal");
        res.trace.push_back("candidate ideal not principal");
        return res;
    }
    FieldElement beta = pr.generator * extra * FieldElement::from_k(O, delta).inverse();
    KElement t = to_k(target);
    EisensteinInt eta = unit_of(beta.relative_norm() * k_inverse(t));
    res.trace.push_back("relative norm is " + eta.str() + " times the target");

    if (!(eta == EisensteinInt(1))) {
        NormUnits H = norm_units(F);
        for (auto& s : H.trace) res.trace.push_back(s);
        int ie = unit_index(eta);
        auto it = H.by_index.find(ie);
        if (it != H.by_index.end()) {
            beta = beta * it->second.inverse();
            eta = EisensteinInt(1);
        } else if (allow_unit) {
            // report the unit of least index in the coset eta * H
            int best = ie;
            const FieldElement* adj = nullptr;
            for (auto& [i, x] : H.by_index)
                if ((ie - i + 6) % 6 < best) {
                    best = (ie - i + 6) % 6;
                    adj = &x;
                }
            if (adj) beta = beta * adj->inverse();
            eta = unit_of(beta.relative_norm() * k_inverse(t));
        } else {
            res.trace.push_back("unit " + eta.str() + " is not a relative norm");
            res.solvable = (exact_no && H.complete) ? Tristate::No : Tristate::Unknown;
            return res;
        }
    }
    SYMSPLIT_CHECK(beta.relative_norm() == to_k(eta) * t, "certificate refolds to unit times target");
    res.solvable = Tristate::Yes;
    res.beta = beta;
    res.unit = eta;
    return res;
}

SymbolAlgebraDescriptor reduce_exponent(const SymbolAlgebraDescriptor& d)
{
    if (d.q != 3) fail(ErrorCode::InvalidArgument, "only q = 3 is supported");
    SymbolAlgebraDescriptor r = d;
    r.b_exponent = d.b_exponent % 3;
    return r;
}

namespace {

void require_prime_not_3m(FieldContext& F, const mpz_class& p)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, p.get_str() + " is not prime");
    if (p == 3 || F.m() % p == 0) fail(ErrorCode::PreconditionFailed, "p must not divide 3m");
}

bool residue_of(FieldContext& F, const mpz_class& p) { return cubic_residue_of_field_element(EisensteinInt(F.m()), p); }

// Certificate for unit * b^E: the exponent is reduced mod 3 and the cube part
// b^(E - r) = N(b^((E - r)/3)) folded back in.
Tristate certify(FieldContext& F, SplitDecision& d, const EisensteinInt& b, unsigned long E, bool allow_unit)
{
    OrderPtr O = F.order();
    d.b = b;
    d.exponent = E;
    unsigned long r = E % 3;
    FieldElement cube = FieldElement::from_k(O, to_k(pow(b, (E - r) / 3)));
    if (r == 0) {
        d.certificate = cube;
        d.unit = EisensteinInt(1);
        d.notes.push_back("exponent divisible by 3");
        return Tristate::Yes;
    }
    NormEquationResult n = solve_norm_equation(F, pow(b, r), allow_unit);
    for (auto& s : n.trace) d.notes.push_back(s);
    if (n.solvable == Tristate::Yes) {
        d.certificate = n.beta * cube;
        d.unit = n.unit;
    }
    return n.solvable;
}

SplitDecision residue_rule(FieldContext& F, const mpz_class& p, Rule rule, unsigned long E)
{
    SplitDecision d;
    d.rule = rule;
    d.residue = residue_of(F, p);
    Tristate t = certify(F, d, EisensteinInt(p), E, true);
    d.oracle = t;
    if (*d.residue) {
        if (t == Tristate::Yes) {
            d.verdict = Verdict::Split;
        } else {
            d.certificate.reset();
            d.notes.push_back(t == Tristate::No ? "disagreement: residue holds but no norm exists"
                                                : "no certificate within budget");
        }
    } else {
        d.verdict = Verdict::Division;
        if (t == Tristate::Yes) {
            d.notes.push_back("disagreement: non-residue but a norm exists");
            d.verdict = Verdict::Indeterminate;
        }
        d.certificate.reset();
        d.unit = EisensteinInt(1);
    }
    return d;
}

} // namespace

bool certificate_holds(const SplitDecision& d)
{
    if (!d.certificate) return false;
    return d.certificate->relative_norm() == to_k(d.unit * pow(d.b, d.exponent));
}

SplitDecision decide_exponent(FieldContext& F, const mpz_class& p, unsigned long E, bool allow_unit)
{
    require_prime_not_3m(F, p);
    SplitDecision d;
    d.residue = residue_of(F, p);
    SymbolAlgebraDescriptor desc{3, EisensteinInt(F.m()), EisensteinInt(p), E, allow_unit};
    SymbolAlgebraDescriptor red = reduce_exponent(desc);
    if (red.b_exponent == 0) {
        d.rule = Rule::R3_1;
        d.oracle = certify(F, d, EisensteinInt(p), E, allow_unit);
        d.verdict = Verdict::Split;
        return d;
    }
    if (red.b_exponent == 1 && p % 3 == 1 && !*d.residue) {
        d.rule = Rule::P3_8;
        d.b = EisensteinInt(p);
        d.exponent = E;
        d.verdict = Verdict::Division;
        SplitDecision probe;
        d.oracle = certify(F, probe, EisensteinInt(p), E, allow_unit);
        if (d.oracle == Tristate::Yes) {
            d.notes.push_back("disagreement: oracle found a norm");
            d.verdict = Verdict::Indeterminate;
        }
        return d;
    }
    d.rule = Rule::NormOracle;
    d.oracle = certify(F, d, EisensteinInt(p), E, allow_unit);
    if (d.oracle == Tristate::Yes) d.verdict = Verdict::Split;
    if (d.oracle == Tristate::No) {
        d.verdict = Verdict::Division;
        d.certificate.reset();
    }
    return d;
}

SplitDecision decide_main(FieldContext& F, const mpz_class& p)
{
    require_prime_not_3m(F, p);
    const ClassGroupData& cg = F.class_group();
    ClassOrderResult co = class_order_of_prime(F.order(), F.units(), &cg, p, F.budgets());
    if (!co.determined) {
        SplitDecision d;
        d.rule = Rule::T3_7;
        d.residue = residue_of(F, p);
        d.notes.push_back("h_p undetermined: " + co.note);
        return d;
    }
    SplitDecision d = residue_rule(F, p, Rule::T3_7, co.h_p);
    d.h_p = co.h_p;
    if (cg.complete) d.h_L = cg.h_L;
    return d;
}

SplitDecision decide_hL_exponent(FieldContext& F, const mpz_class& p)
{
    require_prime_not_3m(F, p);
    if (!residue_of(F, p)) fail(ErrorCode::PreconditionFailed, "m is not a cubic residue modulo p");
    const ClassGroupData& cg = F.class_group();
    if (!cg.complete) {
        SplitDecision d;
        d.rule = Rule::P3_2;
        d.residue = true;
        d.notes.push_back("class number unavailable: " + cg.note);
        return d;
    }
    SplitDecision d = residue_rule(F, p, Rule::P3_2, cg.h_L.get_ui());
    d.h_L = cg.h_L;
    return d;
}

SplitDecision decide_gcd_variant(FieldContext& F, const mpz_class& p)
{
    require_prime_not_3m(F, p);
    if (!residue_of(F, p)) fail(ErrorCode::PreconditionFailed, "m is not a cubic residue modulo p");
    const ClassGroupData& cg = F.class_group();
    ClassOrderResult co = class_order_of_prime(F.order(), F.units(), &cg, p, F.budgets());
    if (!co.determined) {
        SplitDecision d;
        d.rule = Rule::P3_5;
        d.residue = true;
        d.notes.push_back("h_p undetermined: " + co.note);
        return d;
    }
    SplitDecision d = residue_rule(F, p, Rule::P3_5, gcd_with_degree(co.h_p, 3));
    d.h_p = co.h_p;
    if (cg.complete) d.h_L = cg.h_L;
    return d;
}

std::vector<SplitDecision> decide_pi_variant(FieldContext& F, const EisensteinInt& pi0)
{
    if (pi0.is_zero() || pi0.is_unit()) fail(ErrorCode::PreconditionFailed, "pi must be a prime, not a unit");
    if (!is_eisenstein_prime(pi0)) fail(ErrorCode::NotPrime, pi0.str() + " is not a prime of Z[w]");
    EisensteinInt pi = canonical(pi0);
    mpz_class p = rational_below(pi);
    require_prime_not_3m(F, p);
    if (cubic_character(EisensteinInt(F.m()), pi) != CharacterValue::One)
        fail(ErrorCode::PreconditionFailed, "m is not a cube modulo pi");
    OrderPtr O = F.order();
    std::vector<PrimeIdeal> above;
    for (auto& P : primes_above(*O, p))
        if (canonical(P.below) == pi) above.push_back(P);
    const ClassGroupData& cg = F.class_group();
    ClassOrderResult co = class_order_of_ideal(O, F.units(), &cg, above[0], above, F.budgets());
    std::vector<SplitDecision> out;
    for (int variant = 0; variant < 2; ++variant) {
        SplitDecision d;
        d.rule = Rule::P3_6;
        d.residue = true;
        if (!co.determined) {
            d.notes.push_back("h_pi undetermined: " + co.note);
            out.push_back(d);
            continue;
        }
        unsigned long E = variant == 0 ? co.h_p : gcd_with_degree(co.h_p, 3);
        d.h_p = co.h_p;
        if (cg.complete) d.h_L = cg.h_L;
        d.oracle = certify(F, d, pi, E, true);
        if (d.oracle == Tristate::Yes) d.verdict = Verdict::Split;
        else d.notes.push_back(d.oracle == Tristate::No ? "disagreement: no norm exists" : "no certificate within budget");
        out.push_back(d);
    }
    return out;
}

SplitDecision decide_division(FieldContext& F, const mpz_class& p)
{
    require_prime_not_3m(F, p);
    if (p % 3 != 1) fail(ErrorCode::PreconditionFailed, "p must be 1 mod 3");
    if (residue_of(F, p)) fail(ErrorCode::PreconditionFailed, "m is a cubic residue modulo p");
    SplitDecision d;
    d.rule = Rule::P3_8;
    d.residue = false;
    d.b = EisensteinInt(p);
    d.exponent = 1;
    d.verdict = Verdict::Division;
    SplitDecision probe;
    d.oracle = certify(F, probe, EisensteinInt(p), 1, false);
    if (d.oracle == Tristate::Yes) {
        d.notes.push_back("disagreement: oracle found a norm");
        d.verdict = Verdict::Indeterminate;
    }
    return d;
}

SplitDecision decide_classnumber_one(FieldContext& F, const mpz_class& p)
{
    require_prime_not_3m(F, p);
    const ClassGroupData& cg = F.class_group();
    if (!cg.complete || !cg.certified) fail(ErrorCode::PreconditionFailed, "class number not established");
    if (cg.h_L != 1) fail(ErrorCode::PreconditionFailed, "class number is " + cg.h_L.get_str() + ", not 1");
    SplitDecision d = residue_rule(F, p, Rule::P3_9, 1);
    d.h_L = cg.h_L;
    d.h_p = 1;
    return d;
}

} // namespace symsplit
