// Acceptance run: one PASS/FAIL line per criterion. Limits and tolerances
// are fixed below; nothing is read from the environment.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "symsplit/algebra.hpp"
#include "symsplit/cli.hpp"
#include "symsplit/cyclotomic.hpp"
#include "symsplit/json_io.hpp"
#include "symsplit/kernels.hpp"
#include "symsplit/numtheory.hpp"
#include "symsplit/residue.hpp"

using namespace symsplit;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kClassNumberSmallSeconds = 60;    // m = 5 and m = 11, each
constexpr double kClassNumberLargeSeconds = 900;   // m = 43
constexpr double kClassOrderSeconds = 600;         // each (m, p)
constexpr double kIndeterminateRateLimit = 0.10;   // main-theorem sweep
constexpr double kPropertySuiteSeconds = 300;      // all property checks together
constexpr int kEisensteinSamples = 10'000;
constexpr double kEisensteinNormCap = 1e12;
constexpr int kCharacterTriples = 1'000;
constexpr int kLllLattices = 200;
constexpr int kFinckePohstLattices = 100;

const std::vector<long> kSweepFields{2, 5, 6, 7, 10, 11, 12, 43};
constexpr u64 kSweepPrimeLimit = 60;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
    bool ok = true;
    std::vector<std::string> details;
    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            details.push_back("FAILED: " + what);
        }
    }
    void info(const std::string& s) { details.push_back(s); }
};

struct CliRun {
    int code;
    Json doc;
    double seconds;
};

CliRun cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "--no-cache");
    std::ostringstream out, err;
    auto t0 = Clock::now();
    int code = run(args, out, err);
    double s = seconds_since(t0);
    return {code, Json::parse(out.str()), s};
}

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << x;
    return os.str();
}

OrderPtr order(long m)
{
    static std::map<long, OrderPtr> cache;
    auto& slot = cache[m];
    if (!slot) slot = NumberFieldOrder::build(m);
    return slot;
}

FieldContext& field(long m)
{
    static std::map<long, std::unique_ptr<FieldContext>> cache;
    auto& slot = cache[m];
    if (!slot) slot = std::make_unique<FieldContext>(mpz_class(m), Budgets{});
    return *slot;
}

std::vector<u64> sweep_primes(long m)
{
    std::vector<u64> out;
    for (u64 p : primes_up_to(kSweepPrimeLimit - 1)) {
        if (p == 3 || m % (long)p == 0) continue;
        if (order(m)->index() % p == 0) continue;
        out.push_back(p);
    }
    return out;
}

// ---- criteria

Report class_numbers()
{
    Report r;
    for (auto [m, expected, limit] : std::vector<std::tuple<long, const char*, double>>{
             {5, "1", kClassNumberSmallSeconds}, {11, "4", kClassNumberSmallSeconds}, {43, "48", kClassNumberLargeSeconds}}) {
        auto c = cli({"classnum", "--m", std::to_string(m)});
        const Json& o = c.doc["outputs"];
        std::string got = o.value("h_L", std::string("?"));
        r.info("m = " + std::to_string(m) + ": h_L = " + got + " in " + fmt(c.seconds) + " s");
        r.require(c.code == kExitOk, "classnum --m " + std::to_string(m) + " exits 0");
        r.require(got == expected, "h_L = " + std::string(expected) + " for m = " + std::to_string(m));
        r.require(c.seconds <= limit, "time limit for m = " + std::to_string(m));
        if (m == 43) {
            mpz_class prod = 1;
            std::string shape;
            for (auto& d : o["elementary_divisors"]) {
                prod *= mpz_from_json(d);
                shape += (shape.empty() ? "" : " x ") + std::string("Z/") + d.get<std::string>();
            }
            r.info("m = 43: Cl(L) = " + shape);
            r.require(prod == 48, "elementary divisors for m = 43 multiply to 48");
        }
    }
    return r;
}

Report class_orders()
{
    Report r;
    for (auto [m, p, expected] :
         std::vector<std::tuple<long, long, const char*>>{{43, 23, "12"}, {43, 11, "2"}, {11, 19, "2"}}) {
        auto c = cli({"classorder", "--m", std::to_string(m), "--p", std::to_string(p)});
        std::string got = c.doc["outputs"]["h_p"].is_string() ? c.doc["outputs"]["h_p"].get<std::string>() : "?";
        std::string tag = "(" + std::to_string(m) + ", " + std::to_string(p) + ")";
        r.info(tag + ": h_p = " + got + " in " + fmt(c.seconds) + " s");
        r.require(c.code == kExitOk && got == expected, "h_p = " + std::string(expected) + " for " + tag);
        r.require(c.seconds <= kClassOrderSeconds, "time limit for " + tag);
    }
    return r;
}

// The certificate from the JSON report, re-read and refolded independently.
bool refolds(long m, const Json& outputs, const EisensteinInt& target)
{
    QVec coords;
    for (auto& c : outputs["beta"]["coords"]) coords.push_back(mpq_from_json(c));
    FieldElement beta(order(m), coords);
    EisensteinInt unit = eisenstein_from_json(outputs["unit"]);
    return beta.relative_norm() == to_k(unit * target);
}

Report norm_ladder()
{
    Report r;
    struct Rung {
        long m, p;
        unsigned long e;
        bool solvable;
    };
    std::vector<Rung> ladder{{43, 23, 12, true}, {43, 23, 3, true}, {43, 23, 2, false}, {43, 23, 1, false},
                             {43, 11, 2, true},  {43, 11, 1, true}, {11, 19, 2, true},  {11, 19, 1, true},
                             {5, 17, 1, true},   {5, 19, 1, false}};
    int matched = 0;
    for (auto& g : ladder) {
        EisensteinInt t = pow(EisensteinInt(g.p), g.e);
        std::string tag = "m = " + std::to_string(g.m) + ", " + std::to_string(g.p) + "^" + std::to_string(g.e);
        for (bool allow_unit : {false, true}) {
            std::vector<std::string> args{"normeq", "--m", std::to_string(g.m), "--target", t.a.get_str()};
            if (allow_unit) args.push_back("--allow-unit");
            auto c = cli(args);
            const Json& o = c.doc["outputs"];
            std::string got = o.value("solvable", std::string("?"));
            if (!allow_unit) {
                bool ok = c.code == kExitOk && got == (g.solvable ? "yes" : "no");
                matched += ok;
                r.require(ok, tag + " expected " + (g.solvable ? "solvable" : "unsolvable") + ", got " + got);
            } else {
                r.require(c.code == kExitOk, tag + " with --allow-unit is determinate");
                if (g.solvable) r.require(got == "yes", tag + " stays solvable with --allow-unit");
            }
            if (got == "yes")
                r.require(refolds(g.m, o, t), tag + (allow_unit ? " (--allow-unit)" : "") + " certificate refolds");
            if (!allow_unit && got == "yes") r.require(o["unit"] == to_json(EisensteinInt(1)), tag + " needs no unit");
        }
    }
    r.info(std::to_string(matched) + "/" + std::to_string(ladder.size()) + " rungs match; every solvable answer refolds");
    return r;
}

Report main_sweep()
{
    Report r;
    int total = 0, indeterminate = 0, disagreements = 0, oracle_checked = 0;
    for (long m : kSweepFields) {
        auto& F = field(m);
        for (u64 p : sweep_primes(m)) {
            auto d = decide_main(F, p);
            bool residue = cubic_residue_of_field_element(EisensteinInt(m), p);
            ++total;
            std::string tag = "m = " + std::to_string(m) + ", p = " + std::to_string(p);
            if (d.verdict == Verdict::Indeterminate) {
                ++indeterminate;
                continue;
            }
            if ((d.verdict == Verdict::Split) != residue) {
                ++disagreements;
                r.require(false, tag + ": verdict " + verdict_name(d.verdict) + " against the residue test");
            }
            if (d.oracle != Tristate::Unknown) {
                ++oracle_checked;
                if ((d.oracle == Tristate::Yes) != residue) {
                    ++disagreements;
                    r.require(false, tag + ": norm oracle disagrees");
                }
            }
            if (d.verdict == Verdict::Split) r.require(certificate_holds(d), tag + ": certificate refolds");
        }
    }
    double rate = total ? (double)indeterminate / total : 1.0;
    r.info(std::to_string(total) + " pairs, " + std::to_string(disagreements) + " disagreements, " +
           std::to_string(indeterminate) + " indeterminate (" + fmt(100 * rate) + "%), oracle terminated on " +
           std::to_string(oracle_checked));
    r.require(disagreements == 0, "zero disagreements");
    r.require(rate < kIndeterminateRateLimit, "indeterminate rate below 10%");
    return r;
}

u64 brute_order(u64 p, u64 l)
{
    u64 x = p % l, f = 1;
    while (x != 1) {
        x = x * (p % l) % l;
        ++f;
    }
    return f;
}

u64 brute_phi(u64 l)
{
    u64 c = 0;
    for (u64 k = 1; k <= l; ++k) c += std::gcd(k, l) == 1;
    return c;
}

Report shapes()
{
    Report r;
    int pairs = 0, factorizations = 0;
    for (u64 l = 3; l < 50; ++l)
        for (u64 p : primes_up_to(99)) {
            if (l % p == 0) continue;
            auto s = decomposition_shape(l, p);
            ++pairs;
            u64 f = brute_order(p, l);
            r.require(s.f == f && s.r == brute_phi(l) / f,
                      "(f, r) for l = " + std::to_string(l) + ", p = " + std::to_string(p));
        }
    for (long m : kSweepFields)
        for (u64 p : primes_up_to(99)) {
            const auto& O = *order(m);
            auto primes = primes_above(O, mpz_class((unsigned long)p));
            unsigned long degree = 0;
            IdealHNF product = unit_ideal();
            for (auto& P : primes) {
                degree += (unsigned long)P.e * P.f;
                product = ideal_mul(O, product, ideal_pow(O, P.ideal, P.e));
            }
            ++factorizations;
            std::string tag = "m = " + std::to_string(m) + ", p = " + std::to_string(p);
            r.require(degree == 6, tag + ": sum of e f is 6");
            r.require(product == ideal_from_integer(mpz_class((unsigned long)p)), tag + ": factorization refolds");
            if (p != 3 && m % (long)p != 0) {
                auto ks = kummer_shape_for(m, 3, p);
                std::multiset<std::pair<unsigned, unsigned>> predicted, actual;
                for (auto& part : ks.parts)
                    for (u64 k = 0; k < part.count; ++k) predicted.insert({(unsigned)part.e, (unsigned)part.f});
                for (auto& P : primes) actual.insert({P.e, P.f});
                r.require(predicted == actual, tag + ": character-predicted shape matches the factorization");
            }
        }
    for (auto [m, p, count, f] : std::vector<std::tuple<long, u64, std::size_t, unsigned>>{{43, 23, 3, 2}, {11, 19, 6, 1}}) {
        auto primes = primes_above(*order(m), mpz_class((unsigned long)p));
        bool ok = primes.size() == count;
        for (auto& P : primes) ok = ok && P.e == 1 && P.f == f;
        r.require(ok, "(" + std::to_string(m) + ", " + std::to_string(p) + ") gives " + std::to_string(count) + " primes");
        r.info("(" + std::to_string(m) + ", " + std::to_string(p) + "): " + std::to_string(primes.size()) +
               " primes of residue degree " + std::to_string(f));
    }
    r.info(std::to_string(pairs) + " cyclotomic pairs, " + std::to_string(factorizations) + " factorizations in O_L");
    return r;
}

// ---- property suites

EisensteinInt random_eisenstein(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    return EisensteinInt(d(rng), d(rng));
}

EisensteinInt random_prime(std::mt19937_64& rng)
{
    for (;;) {
        u64 p = 2 + rng() % 5000;
        if (p == 3 || !is_prime(mpz_class((unsigned long)p))) continue;
        auto s = factor_rational_prime(mpz_class((unsigned long)p));
        if (s.kind == PrimeKind::Split && rng() % 2) return s.pi_conj;
        return s.pi;
    }
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

ZMat gram_of_rows(const ZMat& B)
{
    ZMat G = zmat(B.size(), B.size());
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            for (std::size_t k = 0; k < B[i].size(); ++k) G[i][j] += B[i][k] * B[j][k];
    return G;
}

void eisenstein_property(Report& r)
{
    std::mt19937_64 rng(101);
    int failures = 0, n = 0;
    while (n < kEisensteinSamples) {
        EisensteinInt z = random_eisenstein(rng, 577'000);
        if (z.is_zero() || z.norm().get_d() > kEisensteinNormCap) continue;
        ++n;
        auto fac = factor(z);
        bool ok = fac.refold() == z && fac.unit.is_unit();
        for (auto& [q, e] : fac.factors) ok = ok && e > 0 && is_eisenstein_prime(q);
        failures += !ok;
    }
    r.info("Eisenstein factor/refold: " + std::to_string(n) + " inputs, " + std::to_string(failures) + " failures");
    r.require(failures == 0, "Eisenstein factorizations refold");
}

void character_property(Report& r)
{
    std::mt19937_64 rng(202);
    int failures = 0;
    for (int t = 0; t < kCharacterTriples; ++t) {
        EisensteinInt pi = random_prime(rng);
        EisensteinInt a, b, g;
        do a = random_eisenstein(rng, 100'000);
        while (a.is_zero() || divides(pi, a));
        do b = random_eisenstein(rng, 100'000);
        while (b.is_zero() || divides(pi, b));
        do g = random_eisenstein(rng, 1'000);
        while (g.is_zero() || divides(pi, g));
        bool ok = cubic_character(a * b, pi) == character_mul(cubic_character(a, pi), cubic_character(b, pi));
        ok = ok && cubic_character(g * g * g, pi) == CharacterValue::One;
        failures += !ok;
    }
    r.info("characters: " + std::to_string(kCharacterTriples) + " triples, " + std::to_string(failures) + " failures");
    r.require(failures == 0, "multiplicativity and cube kernel");
}

void lll_property(Report& r)
{
    std::mt19937_64 rng(303);
    int failures = 0, reductions = 0;
    for (int t = 0; t < kLllLattices; ++t) {
        ZMat B = zmat(6, 6);
        for (auto& row : B)
            for (auto& x : row) x = (long)(rng() % 20001) - 10000;
        if (det(B) == 0) continue;
        auto res = lll_gram(gram_of_rows(B));
        ++reductions;
        failures += !lovasz_condition_holds(res.gram);
    }
    // the reductions behind ideal lattices of the factor base
    const auto& cg = field(43).class_group();
    std::array<Real, 3> ones{Real(1), Real(1), Real(1)};
    for (auto& P : cg.factor_base) {
        auto L = ideal_lattice(*order(43), P.ideal, ones);
        ++reductions;
        failures += !lovasz_condition_holds(L.gram);
    }
    r.info("LLL: " + std::to_string(reductions) + " reductions, " + std::to_string(failures) + " Lovasz failures");
    r.require(failures == 0, "Lovasz condition on every reduction");
}

void fincke_pohst_property(Report& r)
{
    std::mt19937_64 rng(404);
    int done = 0, failures = 0;
    std::vector<double> vecs, vals;
    for (long idx = 0; idx < 117649; ++idx) {
        long rem = idx;
        for (int k = 0; k < 6; ++k) {
            vecs.push_back((double)(rem % 7 - 3));
            rem /= 7;
        }
    }
    vals.resize(vecs.size() / 6);
    while (done < kFinckePohstLattices) {
        ZMat B = zmat(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) B[i][j] = (i == j) ? (long)(rng() % 40) + 60 : (long)(rng() % 21) - 10;
        ZMat G = gram_of_rows(B);
        QMat Gi = inverse(to_q(G));
        mpz_class bound = G[0][0];
        for (int i = 1; i < 6; ++i) bound = std::min(bound, G[i][i]);
        bound *= 2;
        // |x_i| <= sqrt(bound * Ginv_ii) < 3 puts every short vector in the box
        bool box_ok = true;
        for (int i = 0; i < 6; ++i) box_ok = box_ok && mpq_class(bound * Gi[i][i]) < 9;
        if (!box_ok) continue;
        ++done;
        auto sv = enumerate_short_vectors(G, bound, 10'000'000);
        std::set<ZVec> got(sv.begin(), sv.end());
        std::vector<double> Gd(36);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) Gd[6 * i + j] = G[i][j].get_d();
        kernels::quad_form_batch(Gd.data(), vecs.data(), vals.size(), vals.data());
        std::set<ZVec> oracle;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (vals[i] > bound.get_d() * 1.000001 + 1) continue;
            ZVec v(6);
            for (int k = 0; k < 6; ++k) v[k] = (long)vecs[6 * i + k];
            if (canonical_sign(v) && qform(G, v) <= bound) oracle.insert(v);
        }
        failures += !(oracle == got && got.size() == sv.size());
    }
    r.info("Fincke-Pohst: " + std::to_string(done) + " lattices, " + std::to_string(failures) + " mismatches");
    r.require(failures == 0, "enumeration complete against the box oracle");
}

void exponent_coherence_property(Report& r)
{
    int checks = 0, failures = 0;
    for (long m : kSweepFields) {
        auto& F = field(m);
        for (u64 p : sweep_primes(m))
            for (unsigned long e : {1ul, 2ul}) {
                auto x = solve_norm_equation(F, pow(EisensteinInt((long)p), e), false);
                auto y = solve_norm_equation(F, pow(EisensteinInt((long)p), e + 3), false);
                ++checks;
                bool ok = x.solvable != Tristate::Unknown && x.solvable == y.solvable;
                if (!ok)
                    r.info("  m = " + std::to_string(m) + ", p = " + std::to_string(p) + ", e = " + std::to_string(e) +
                           ": " + tristate_name(x.solvable) + " vs " + tristate_name(y.solvable));
                failures += !ok;
            }
    }
    r.info("exponent mod 3: " + std::to_string(checks) + " pairs, " + std::to_string(failures) + " failures");
    r.require(failures == 0, "b^e and b^(e+3) agree on the sweep grid");
}

Report property_suites()
{
    Report r;
    auto t0 = Clock::now();
    eisenstein_property(r);
    character_property(r);
    lll_property(r);
    fincke_pohst_property(r);
    exponent_coherence_property(r);
    double s = seconds_since(t0);
    r.info("property suites took " + fmt(s) + " s");
    r.require(s <= kPropertySuiteSeconds, "property suites within 5 minutes");
    return r;
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Report()>>> criteria{
        {"1 class numbers", class_numbers},     {"2 class orders", class_orders},
        {"3 norm-equation ladder", norm_ladder}, {"4 main theorem sweep", main_sweep},
        {"5 decomposition shapes", shapes},      {"6 property suites", property_suites},
    };
    int failed = 0;
    for (auto& [name, fn] : criteria) {
        auto t0 = Clock::now();
        Report r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.ok = false;
            r.details.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (r.ok ? "PASS" : "FAIL") << "  criterion " << name << "  [" << fmt(seconds_since(t0)) << " s]\n";
        for (auto& d : r.details) std::cout << "      " << d << '\n';
        std::cout.flush();
        failed += !r.ok;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criterion/criteria failed\n"
                         : std::string("acceptance: all criteria pass\n"));
    return failed ? 1 : 0;
}
