#include "symsplit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "symsplit/cache.hpp"
#include "symsplit/config.hpp"
#include "symsplit/cyclotomic.hpp"
#include "symsplit/errors.hpp"
#include "symsplit/json_io.hpp"
#include "symsplit/numtheory.hpp"
#include "symsplit/residue.hpp"
#include "symsplit/version.hpp"

namespace symsplit {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Args {
    std::string config, cache_dir;
    bool pretty = false, no_cache = false;

    std::string m, p, pi, target, alpha, ideal, rule = "main";
    std::optional<unsigned long> exponent;
    bool allow_unit = false, plain = false;
    std::string l;
};

enum class Status { Ok, Indeterminate, Failed };

struct Outcome {
    Json inputs = Json::object();
    Json outputs = Json::object();
    Status status = Status::Ok;
    std::vector<std::string> summary;
};

// Field data shared by the subcommands of one run, backed by the cache.
class Session {
public:
    Session(Budgets b, std::optional<fs::path> cache_dir, std::ostream& err)
        : budgets_(b), err_(err)
    {
        if (cache_dir) cache_.emplace(*cache_dir);
    }

    const Budgets& budgets() const { return budgets_; }

    FieldContext& field(const mpz_class& m)
    {
        auto it = slots_.find(m);
        if (it != slots_.end()) return *it->second.F;
        Slot s;
        s.F = std::make_unique<FieldContext>(m, budgets_);
        if (cache_) {
            std::string warning;
            s.status = cache_->load(*s.F, warning);
            if (!warning.empty()) err_ << "warning: " << warning << "; recomputing\n";
        }
        s.had_units = s.F->has_units();
        s.had_class_group = s.F->has_class_group();
        return *slots_.emplace(m, std::move(s)).first->second.F;
    }

    void finish()
    {
        if (!cache_) return;
        for (auto& [m, s] : slots_) {
            bool fresh = (s.F->has_units() && !s.had_units) || (s.F->has_class_group() && !s.had_class_group);
            if (!fresh) continue;
            std::string warning;
            if (!cache_->store(*s.F, warning)) err_ << "warning: " << warning << "\n";
        }
    }

    Json cache_report() const
    {
        Json j = Json::object();
        for (auto& [m, s] : slots_) j[m.get_str()] = cache_status_name(s.status);
        return j;
    }

private:
    struct Slot {
        std::unique_ptr<FieldContext> F;
        CacheStatus status = CacheStatus::Off;
        bool had_units = false, had_class_group = false;
    };
    Budgets budgets_;
    std::ostream& err_;
    std::optional<FieldCache> cache_;
    std::map<mpz_class, Slot> slots_;
};

mpz_class parse_int(const std::string& s, const char* flag)
{
    if (s.empty()) throw UsageError(std::string(flag) + " is required");
    try {
        return from_string(s);
    } catch (const MathError&) {
        throw UsageError(std::string(flag) + " needs an integer, got '" + s + "'");
    }
}

u64 parse_small_prime(const std::string& s, const char* flag)
{
    mpz_class p = parse_int(s, flag);
    if (p < 2 || !p.fits_ulong_p()) throw UsageError(std::string(flag) + " is out of range");
    return p.get_ui();
}

EisensteinInt parse_eis(const std::string& s, const char* flag)
{
    if (s.empty()) throw UsageError(std::string(flag) + " is required");
    try {
        return parse_eisenstein(s);
    } catch (const MathError&) {
        throw UsageError(std::string(flag) + " needs the form a+b*w, got '" + s + "'");
    }
}

Json budgets_json(const Budgets& b)
{
    return Json{{"node_cap", b.node_cap},   {"factor_bound", b.factor_bound},       {"harvest_cap", b.harvest_cap},
                {"unit_radius_cap", b.unit_radius_cap}, {"cell_cap", b.cell_cap}, {"hp_cap", b.hp_cap},
                {"digits", b.digits}};
}

Json field_inputs(const FieldContext& F)
{
    return Json{{"m", F.m_input().get_str()}, {"m_cube_free", F.m().get_str()}};
}

Json shape_json(const mpz_class& m, u64 p)
{
    auto cs = decomposition_shape(3, p);
    auto ks = kummer_shape_for(m, 3, p);
    return Json{{"f", cs.f}, {"r", cs.r}, {"kummer", to_json(ks)}, {"outside_splitting_scope", ks.outside_splitting_scope}};
}

std::string describe_parts(const KummerSplitShape& s)
{
    std::string out;
    for (auto& p : s.parts) {
        if (!out.empty()) out += "; ";
        out += std::to_string(p.count) + " prime" + (p.count == 1 ? "" : "s") + " with e = " + std::to_string(p.e) +
               ", f = " + std::to_string(p.f);
    }
    return out;
}

std::string decision_line(const SplitDecision& d)
{
    std::ostringstream os;
    os << verdict_name(d.verdict) << " by " << rule_name(d.rule) << " for (" << d.b.str() << ")^" << d.exponent;
    if (d.unit != EisensteinInt(1)) os << " times the unit " << d.unit.str();
    if (d.h_p) os << ", h_p = " << *d.h_p;
    if (d.h_L) os << ", h_L = " << d.h_L->get_str();
    if (d.certificate) os << (certificate_holds(d) ? ", certificate verified" : ", certificate FAILS");
    return os.str();
}

// ---- subcommands

Outcome cmd_analyze(Session& S, const Args& a)
{
    Outcome o;
    FieldContext& F = S.field(parse_int(a.m, "--m"));
    o.inputs = field_inputs(F);
    std::vector<SplitDecision> ds;
    std::optional<u64> rational_prime;
    if (!a.pi.empty()) {
        if (!a.p.empty()) throw UsageError("give either --p or --pi, not both");
        if (a.exponent || a.allow_unit || a.rule != "main")
            throw UsageError("--pi fixes the exponents; --exponent, --allow-unit and --rule do not apply");
        EisensteinInt pi = parse_eis(a.pi, "--pi");
        o.inputs["pi"] = to_json(pi);
        ds = decide_pi_variant(F, pi);
        mpz_class below = pi.is_rational() ? abs(pi.a) : pi.norm();
        if (is_prime(below) && below.fits_ulong_p()) rational_prime = below.get_ui();
    } else {
        mpz_class p = parse_int(a.p, "--p");
        o.inputs["p"] = p.get_str();
        o.inputs["exponent"] = a.exponent ? Json(std::to_string(*a.exponent)) : Json(nullptr);
        o.inputs["allow_unit"] = a.allow_unit;
        o.inputs["rule"] = a.exponent ? "exponent" : a.rule;
        if (a.exponent) {
            if (a.rule != "main") throw UsageError("--exponent and --rule are exclusive");
            ds.push_back(decide_exponent(F, p, *a.exponent, a.allow_unit));
        } else if (a.allow_unit) {
            throw UsageError("--allow-unit needs --exponent");
        } else if (a.rule == "main") {
            ds.push_back(decide_main(F, p));
        } else if (a.rule == "hl") {
            ds.push_back(decide_hL_exponent(F, p));
        } else if (a.rule == "gcd") {
            ds.push_back(decide_gcd_variant(F, p));
        } else if (a.rule == "division") {
            ds.push_back(decide_division(F, p));
        } else if (a.rule == "classnumber-one") {
            ds.push_back(decide_classnumber_one(F, p));
        } else {
            throw UsageError("unknown --rule '" + a.rule + "'");
        }
        if (p.fits_ulong_p()) rational_prime = p.get_ui();
    }
    o.outputs = to_json(ds[0]);
    if (ds.size() > 1) o.outputs["gcd_variant"] = to_json(ds[1]);
    if (rational_prime && *rational_prime != 3 && F.m() % *rational_prime != 0)
        o.outputs["shapes"] = shape_json(F.m(), *rational_prime);
    for (auto& d : ds) {
        if (d.verdict == Verdict::Indeterminate) o.status = Status::Indeterminate;
        o.summary.push_back(decision_line(d));
        for (auto& n : d.notes) o.summary.push_back("  note: " + n);
    }
    return o;
}

Outcome cmd_normeq(Session& S, const Args& a)
{
    Outcome o;
    FieldContext& F = S.field(parse_int(a.m, "--m"));
    EisensteinInt t = parse_eis(a.target, "--target");
    o.inputs = field_inputs(F);
    o.inputs["target"] = to_json(t);
    o.inputs["allow_unit"] = a.allow_unit;
    auto r = solve_norm_equation(F, t, a.allow_unit);
    o.outputs["solvable"] = tristate_name(r.solvable);
    o.outputs["unit"] = to_json(r.unit);
    if (r.solvable == Tristate::Yes) {
        o.outputs["beta"] = to_json(r.beta);
        bool refolds = r.beta.relative_norm() == to_k(r.unit * t);
        o.outputs["refolds"] = refolds;
        SYMSPLIT_CHECK(refolds, "norm-equation certificate refolds to the target");
    } else {
        o.outputs["beta"] = nullptr;
    }
    o.outputs["trace"] = r.trace;
    if (r.solvable == Tristate::Unknown) o.status = Status::Indeterminate;
    o.summary.push_back("N(beta) = " + (r.unit == EisensteinInt(1) ? std::string() : r.unit.str() + " * ") + t.str() +
                        ": " + tristate_name(r.solvable));
    for (auto& line : r.trace) o.summary.push_back("  " + line);
    return o;
}

Outcome cmd_classnum(Session& S, const Args& a)
{
    Outcome o;
    FieldContext& F = S.field(parse_int(a.m, "--m"));
    o.inputs = field_inputs(F);
    const auto& U = F.units();
    const auto& cg = F.class_group();
    o.outputs["h_L"] = to_json(cg.h_L);
    o.outputs["elementary_divisors"] = to_json(cg.elementary_divisors);
    o.outputs["complete"] = cg.complete;
    o.outputs["certified"] = cg.certified;
    o.outputs["minkowski_bound"] = cg.minkowski_bound;
    o.outputs["factor_base_size"] = cg.factor_base.size();
    o.outputs["small_primes"] = cg.small.size();
    o.outputs["relations_found"] = cg.relations_found;
    o.outputs["candidates_tried"] = cg.candidates_tried;
    o.outputs["analytic_ratio"] = cg.analytic_ratio;
    o.outputs["regulator"] = U.regulator.str(20, std::ios_base::fixed);
    o.outputs["units_certified"] = U.certified;
    o.outputs["discriminant"] = to_json(F.order()->discriminant());
    o.outputs["note"] = cg.note;
    if (!cg.complete || !cg.certified) o.status = Status::Indeterminate;
    std::string divs;
    for (auto& d : cg.elementary_divisors) divs += (divs.empty() ? "Z/" : " x Z/") + d.get_str();
    o.summary.push_back("h_L = " + cg.h_L.get_str() + (divs.empty() ? "" : ", Cl(L) = " + divs) +
                        (cg.certified ? " (certified)" : " (not certified)"));
    return o;
}

Outcome cmd_classorder(Session& S, const Args& a)
{
    Outcome o;
    FieldContext& F = S.field(parse_int(a.m, "--m"));
    mpz_class p = parse_int(a.p, "--p");
    o.inputs = field_inputs(F);
    o.inputs["p"] = p.get_str();
    o.inputs["plain"] = a.plain;
    const ClassGroupData* cg = a.plain ? nullptr : &F.class_group();
    auto r = class_order_of_prime(F.order(), F.units(), cg, p, F.budgets());
    o.outputs["determined"] = r.determined;
    o.outputs["h_p"] = r.determined ? Json(std::to_string(r.h_p)) : Json(nullptr);
    o.outputs["gcd_with_3"] = r.determined ? Json(std::to_string(gcd_with_degree(r.h_p, 3))) : Json(nullptr);
    o.outputs["h_L"] = cg ? to_json(cg->h_L) : Json(nullptr);
    o.outputs["prime"] = Json{{"norm", to_json(r.prime.norm())}, {"e", r.prime.e}, {"f", r.prime.f}};
    o.outputs["conjugates_agree"] = r.conjugate_agrees;
    Json tested = Json::array();
    for (auto k : r.tested) tested.push_back(std::to_string(k));
    o.outputs["tested"] = tested;
    o.outputs["generator"] = r.determined ? to_json(r.generator) : Json(nullptr);
    o.outputs["note"] = r.note;
    if (!r.determined) o.status = Status::Indeterminate;
    o.summary.push_back(r.determined ? "h_p = " + std::to_string(r.h_p) + " for a prime of norm " + r.prime.norm().get_str()
                                     : "h_p not determined: " + r.note);
    return o;
}

Outcome cmd_character(Session&, const Args& a)
{
    Outcome o;
    EisensteinInt alpha = parse_eis(a.alpha, "--alpha");
    EisensteinInt pi = parse_eis(a.pi, "--pi");
    o.inputs = Json{{"alpha", to_json(alpha)}, {"pi", to_json(pi)}};
    auto v = cubic_character(alpha, pi);
    o.outputs["value"] = character_code(v);
    o.summary.push_back("(" + alpha.str() + " / " + pi.str() + ")_3 = " + character_code(v));
    return o;
}

Outcome cmd_shape(Session& S, const Args& a)
{
    Outcome o;
    u64 l = parse_small_prime(a.l, "--l");
    u64 p = parse_small_prime(a.p, "--p");
    o.inputs = Json{{"l", std::to_string(l)}, {"p", std::to_string(p)}, {"m", a.m.empty() ? Json(nullptr) : Json(a.m)}};
    auto cs = decomposition_shape(l, p);
    o.outputs["f"] = cs.f;
    o.outputs["r"] = cs.r;
    o.summary.push_back(std::to_string(cs.r) + " prime(s) of degree " + std::to_string(cs.f) + " in Q(zeta_" +
                        std::to_string(l) + ")");
    if (a.m.empty()) return o;
    mpz_class m = parse_int(a.m, "--m");
    if (!is_prime(mpz_class((unsigned long)l))) throw UsageError("the Kummer shape needs a prime --l");
    mpz_class mc = cube_free_part(m);
    if (l != 3) mc = m;
    auto ks = kummer_shape_for(mc, l, p);
    o.outputs["kummer"] = to_json(ks);
    o.outputs["outside_splitting_scope"] = ks.outside_splitting_scope;
    o.summary.push_back("Kummer field: " + describe_parts(ks));
    if (l == 3) {
        FieldContext& F = S.field(m);
        const auto& O = *F.order();
        auto primes = primes_above(O, mpz_class((unsigned long)p));
        Json fac = Json::array();
        unsigned long degree = 0;
        IdealHNF product = unit_ideal();
        for (auto& P : primes) {
            fac.push_back(Json{{"e", P.e}, {"f", P.f}, {"norm", to_json(P.norm())}});
            degree += (unsigned long)P.e * P.f;
            product = ideal_mul(O, product, ideal_pow(O, P.ideal, P.e));
        }
        o.outputs["factorization"] = fac;
        o.outputs["degree_sum"] = degree;
        o.outputs["refolds"] = product == ideal_from_integer(mpz_class((unsigned long)p));
    }
    return o;
}

Outcome cmd_field(Session& S, const Args& a)
{
    Outcome o;
    FieldContext& F = S.field(parse_int(a.m, "--m"));
    const auto& O = *F.order();
    o.inputs = field_inputs(F);
    o.outputs["defining_polynomial"] = to_json(O.defining_polynomial());
    o.outputs["power_basis"] = "index 3i+j holds the coefficient of w^i c^j, c^3 = m";
    o.outputs["basis_numerators"] = to_json(O.basis_numerators());
    o.outputs["basis_denominator"] = to_json(O.basis_denominator());
    o.outputs["discriminant"] = to_json(O.discriminant());
    o.outputs["index"] = to_json(O.index());
    o.outputs["maximalized_primes"] = to_json(O.maximalized_primes());
    o.outputs["sigma"] = to_json(O.sigma_matrix());
    Json table = Json::array();
    for (std::size_t i = 0; i < 6; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < 6; ++j) row.push_back(to_json(O.table(i, j)));
        table.push_back(row);
    }
    o.outputs["multiplication_table"] = table;
    o.summary.push_back(O.describe());
    return o;
}

Outcome cmd_principal(Session& S, const Args& a)
{
    Outcome o;
    FieldContext& F = S.field(parse_int(a.m, "--m"));
    const auto& O = *F.order();
    if (a.ideal.empty()) throw UsageError("--ideal is required");
    Json request;
    try {
        request = Json::parse(a.ideal);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("--ideal is not valid JSON: ") + e.what());
    }
    o.inputs = field_inputs(F);
    o.inputs["ideal"] = request;
    PrincipalResult r;
    if (request.contains("generators")) {
        std::vector<ZVec> gens;
        for (auto& g : request.at("generators")) {
            gens.push_back(zvec_from_json(g));
            if (gens.back().size() != 6) throw UsageError("each generator needs 6 integral coordinates");
        }
        if (gens.empty()) throw UsageError("no generators given");
        mpz_class D = abs(O.norm(gens[0]));
        if (D == 0) throw UsageError("the first generator must be nonzero");
        r = is_principal(F.order(), F.units(), ideal_from_generators(O, gens, D), F.budgets());
    } else if (request.contains("primes")) {
        std::vector<std::vector<PrimeIdeal>> above;
        std::vector<std::pair<std::size_t, unsigned long>> picks;
        for (auto& q : request.at("primes")) {
            mpz_class p = mpz_from_json(q.at("p"));
            if (!is_prime(p)) throw UsageError("'" + p.get_str() + "' is not prime");
            above.push_back(primes_above(O, p));
            auto idx = q.value("index", std::size_t(0));
            if (idx >= above.back().size()) throw UsageError("prime index out of range for " + p.get_str());
            picks.push_back({idx, q.value("exponent", 1ul)});
        }
        std::vector<IdealPower> factors;
        for (std::size_t i = 0; i < picks.size(); ++i) factors.push_back({&above[i][picks[i].first], picks[i].second});
        r = principal_generator_of_product(F.order(), F.units(), factors, F.budgets());
    } else {
        throw UsageError("--ideal needs a 'generators' or 'primes' field");
    }
    o.outputs["status"] = principal_status_name(r.status);
    o.outputs["generator"] = r.status == PrincipalStatus::Principal ? to_json(r.generator) : Json(nullptr);
    o.outputs["cells"] = r.cells;
    o.outputs["nodes"] = r.nodes;
    o.outputs["trace"] = r.trace;
    if (r.status == PrincipalStatus::Indeterminate) o.status = Status::Indeterminate;
    o.summary.push_back(std::string("ideal is ") + principal_status_name(r.status));
    return o;
}

// The worked examples with their published values.
Outcome cmd_paper_suite(Session& S, const Args&)
{
    Outcome o;
    Json lines = Json::array();
    int passed = 0, failed = 0, indeterminate = 0;
    auto check = [&](const std::string& id, const std::string& expected,
                     const std::function<std::pair<std::string, bool>()>& compute) {
        std::string got, status;
        auto t0 = Clock::now();
        try {
            auto [g, undetermined] = compute();
            got = g;
            status = undetermined ? "indeterminate" : (g == expected ? "pass" : "fail");
        } catch (const BudgetExceeded& e) {
            got = e.what();
            status = "indeterminate";
        } catch (const std::exception& e) {
            got = std::string("error: ") + e.what();
            status = "fail";
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (status == "pass") ++passed;
        else if (status == "fail") ++failed;
        else ++indeterminate;
        lines.push_back(Json{{"id", id}, {"expected", expected}, {"got", got}, {"status", status}});
        std::ostringstream os;
        os.precision(2);
        os << std::fixed << (status == "pass" ? "PASS " : status == "fail" ? "FAIL " : "INDET") << "  " << id
           << ": " << got << "  [" << secs << " s]";
        o.summary.push_back(os.str());
    };

    for (auto [m, h] : std::vector<std::pair<long, const char*>>{{5, "1"}, {11, "4"}, {43, "48"}})
        check("class number, m = " + std::to_string(m), h, [&, m = m]() {
            const auto& cg = S.field(m).class_group();
            return std::make_pair(cg.h_L.get_str(), !cg.complete || !cg.certified);
        });
    check("class group structure, m = 43", "Z/4 x Z/12", [&]() {
        const auto& cg = S.field(43).class_group();
        std::string s;
        for (auto& d : cg.elementary_divisors) s += (s.empty() ? "Z/" : " x Z/") + d.get_str();
        return std::make_pair(s, !cg.complete || !cg.certified);
    });

    for (auto [m, p, h] : std::vector<std::tuple<long, long, const char*>>{{43, 23, "12"}, {43, 11, "2"}, {11, 19, "2"}})
        check("class order, m = " + std::to_string(m) + ", p = " + std::to_string(p), h, [&, m = m, p = p]() {
            auto& F = S.field(m);
            auto r = class_order_of_prime(F.order(), F.units(), &F.class_group(), p, F.budgets());
            return std::make_pair(r.determined ? std::to_string(r.h_p) : r.note, !r.determined);
        });

    struct Ladder {
        long m, p;
        unsigned long e;
        bool solvable;
    };
    for (auto L : std::vector<Ladder>{{43, 23, 12, true},
                                      {43, 23, 3, true},
                                      {43, 23, 2, false},
                                      {43, 23, 1, false},
                                      {43, 11, 2, true},
                                      {43, 11, 1, true},
                                      {11, 19, 2, true},
                                      {11, 19, 1, true},
                                      {5, 17, 1, true},
                                      {5, 19, 1, false}})
        check("norm equation, m = " + std::to_string(L.m) + ", target " + std::to_string(L.p) + "^" +
                  std::to_string(L.e),
              L.solvable ? "solvable" : "unsolvable", [&, L = L]() {
                  EisensteinInt t = pow(EisensteinInt(L.p), L.e);
                  auto r = solve_norm_equation(S.field(L.m), t, false);
                  if (r.solvable == Tristate::Unknown) return std::make_pair(std::string("unknown"), true);
                  if (r.solvable == Tristate::No) return std::make_pair(std::string("unsolvable"), false);
                  bool ok = r.beta.relative_norm() == to_k(t);
                  return std::make_pair(std::string(ok ? "solvable" : "solvable, certificate fails"), false);
              });

    auto verdict_of = [](const SplitDecision& d) {
        std::string s = verdict_name(d.verdict);
        if (d.certificate && !certificate_holds(d)) s += ", certificate fails";
        return std::make_pair(s, d.verdict == Verdict::Indeterminate);
    };
    for (auto [m, p, v] : std::vector<std::tuple<long, long, const char*>>{
             {43, 23, "Split"}, {43, 11, "Split"}, {11, 19, "Split"}, {5, 19, "Division"}, {5, 17, "Split"}})
        check("main decision, m = " + std::to_string(m) + ", p = " + std::to_string(p), v,
              [&, m = m, p = p]() { return verdict_of(decide_main(S.field(m), p)); });

    auto with_exponent = [&](const SplitDecision& d) {
        auto [s, u] = verdict_of(d);
        return std::make_pair("exponent " + std::to_string(d.exponent) + ": " + s, u);
    };
    check("class-number exponent, m = 43, p = 23", "exponent 48: Split",
          [&]() { return with_exponent(decide_hL_exponent(S.field(43), 23)); });
    check("class-number exponent, m = 11, p = 19", "exponent 4: Split",
          [&]() { return with_exponent(decide_hL_exponent(S.field(11), 19)); });
    for (auto [m, p, v] : std::vector<std::tuple<long, long, const char*>>{
             {43, 23, "exponent 3: Split"}, {43, 11, "exponent 1: Split"}, {11, 19, "exponent 1: Split"}})
        check("gcd exponent, m = " + std::to_string(m) + ", p = " + std::to_string(p), v,
              [&, m = m, p = p]() { return with_exponent(decide_gcd_variant(S.field(m), p)); });
    check("division rule, m = 5, p = 19", "Division", [&]() { return verdict_of(decide_division(S.field(5), 19)); });
    check("class number one, m = 5, p = 17", "Split",
          [&]() { return verdict_of(decide_classnumber_one(S.field(5), 17)); });

    for (auto [m, p, v] : std::vector<std::tuple<long, u64, const char*>>{{43, 23, "3 primes with e = 1, f = 2"},
                                                                         {11, 19, "6 primes with e = 1, f = 1"}})
        check("decomposition, m = " + std::to_string(m) + ", p = " + std::to_string(p), v, [&, m = m, p = p]() {
            auto ks = kummer_shape_for(m, 3, p);
            auto& O = *S.field(m).order();
            unsigned long degree = 0;
            for (auto& P : primes_above(O, mpz_class((unsigned long)p))) degree += (unsigned long)P.e * P.f;
            std::string s = describe_parts(ks);
            if (degree != 6) s += " (ideal factorization disagrees)";
            return std::make_pair(s, false);
        });

    o.outputs["lines"] = lines;
    o.outputs["passed"] = passed;
    o.outputs["failed"] = failed;
    o.outputs["indeterminate"] = indeterminate;
    if (failed) o.status = Status::Failed;
    else if (indeterminate) o.status = Status::Indeterminate;
    o.summary.push_back(std::to_string(passed) + " passed, " + std::to_string(failed) + " failed, " +
                        std::to_string(indeterminate) + " indeterminate");
    return o;
}

const char* status_name(Status s)
{
    switch (s) {
    case Status::Ok: return "ok";
    case Status::Indeterminate: return "indeterminate";
    case Status::Failed: return "failed";
    }
    return "?";
}

int exit_code(Status s)
{
    switch (s) {
    case Status::Ok: return kExitOk;
    case Status::Indeterminate: return kExitIndeterminate;
    case Status::Failed: return kExitError;
    }
    return kExitError;
}

double millis(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

void emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

int emit_error(std::ostream& out, std::ostream& err, const std::string& command, const std::string& code,
               const std::string& message, Clock::time_point t0)
{
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = command.empty() ? Json(nullptr) : Json(command);
    doc["tool_version"] = kToolVersion;
    doc["status"] = "error";
    doc["error"] = Json{{"code", code}, {"message", message}};
    doc["timings"] = Json{{"total_ms", millis(t0)}};
    emit(out, doc);
    err << "error (" << code << "): " << message << '\n';
    return kExitError;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    auto t0 = Clock::now();
    Args a;
    CLI::App app{"Splitting of cubic symbol algebras (m, b) over Q(w)", "symsplit"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--config", a.config, "budget configuration file (key = value lines)");
    app.add_flag("--pretty", a.pretty, "human-readable summary on standard error");
    app.add_option("--cache-dir", a.cache_dir, "cache directory");
    app.add_flag("--no-cache", a.no_cache, "neither read nor write the cache");
    std::map<std::string, std::string> raw_overrides;
    std::vector<std::pair<std::string, CLI::Option*>> override_opts;
    for (auto& key : budget_keys()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        override_opts.push_back({key, app.add_option(flag, raw_overrides[key], "budget override for " + key)});
    }

    auto add_m = [&](CLI::App* s, bool required = true) {
        auto* opt = s->add_option("--m", a.m, "the integer m of the Kummer field Q(w, cbrt m)");
        if (required) opt->required();
    };
    auto* analyze = app.add_subcommand("analyze", "decide whether (m, p^E) splits");
    add_m(analyze);
    analyze->add_option("--p", a.p, "rational prime b");
    analyze->add_option("--pi", a.pi, "prime of Z[w] as a+b*w");
    analyze->add_option("--exponent", a.exponent, "explicit exponent E of b");
    analyze->add_flag("--allow-unit", a.allow_unit, "decide up to a unit of Z[w]");
    analyze->add_option("--rule", a.rule, "main, hl, gcd, division or classnumber-one");

    auto* normeq = app.add_subcommand("normeq", "solve N(beta) = target in L/Q(w)");
    add_m(normeq);
    normeq->add_option("--target", a.target, "target a+b*w")->required();
    normeq->add_flag("--allow-unit", a.allow_unit, "solve up to a unit of Z[w]");

    auto* classnum = app.add_subcommand("classnum", "class group of L");
    add_m(classnum);

    auto* classorder = app.add_subcommand("classorder", "order h_p of a prime above p in Cl(L)");
    add_m(classorder);
    classorder->add_option("--p", a.p, "rational prime")->required();
    classorder->add_flag("--plain", a.plain, "search exponents without the class group");

    auto* character = app.add_subcommand("character", "cubic residue character (alpha / pi)_3");
    character->add_option("--alpha", a.alpha, "a+b*w")->required();
    character->add_option("--pi", a.pi, "prime of Z[w] as a+b*w")->required();

    auto* shape = app.add_subcommand("shape", "decomposition of p in Q(zeta_l) and Q(zeta_l, m^(1/l))");
    shape->add_option("--l", a.l, "l >= 3")->required();
    shape->add_option("--p", a.p, "rational prime")->required();
    add_m(shape, false);

    auto* field = app.add_subcommand("field", "integral basis, multiplication table and discriminant of O_L");
    add_m(field);

    auto* principal = app.add_subcommand("principal", "principality of an ideal of O_L");
    add_m(principal);
    principal->add_option("--ideal", a.ideal, "JSON: {\"generators\": [...]} or {\"primes\": [...]}")->required();

    auto* suite = app.add_subcommand("paper-suite", "golden table of the worked examples");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        return emit_error(out, err, "", "usage", e.what(), t0);
    }

    CLI::App* cmd = nullptr;
    for (auto* s : app.get_subcommands()) cmd = s;
    std::string name = cmd->get_name();

    Budgets budgets;
    try {
        if (!a.config.empty()) load_budget_config(budgets, a.config);
        for (auto& [key, opt] : override_opts)
            if (opt->count()) set_budget(budgets, key, raw_overrides[key]);
    } catch (const MathError& e) {
        return emit_error(out, err, name, "config", e.what(), t0);
    }

    std::optional<fs::path> cache_dir;
    if (!a.no_cache) cache_dir = a.cache_dir.empty() ? default_cache_dir() : fs::path(a.cache_dir);
    Session session(budgets, cache_dir, err);

    using Handler = Outcome (*)(Session&, const Args&);
    std::map<CLI::App*, Handler> handlers{{analyze, cmd_analyze},       {normeq, cmd_normeq},
                                          {classnum, cmd_classnum},     {classorder, cmd_classorder},
                                          {character, cmd_character},   {shape, cmd_shape},
                                          {field, cmd_field},           {principal, cmd_principal},
                                          {suite, cmd_paper_suite}};
    Outcome o;
    int code = kExitOk;
    try {
        o = handlers.at(cmd)(session, a);
        code = exit_code(o.status);
    } catch (const UsageError& e) {
        session.finish();
        return emit_error(out, err, name, "usage", e.what(), t0);
    } catch (const BudgetExceeded& e) {
        o.outputs = Json{{"reason", e.what()}};
        o.status = Status::Indeterminate;
        o.summary = {std::string("indeterminate: ") + e.what()};
        code = kExitIndeterminate;
    } catch (const MathError& e) {
        session.finish();
        return emit_error(out, err, name, error_code_name(e.code()), e.what(), t0);
    } catch (const std::exception& e) {
        session.finish();
        return emit_error(out, err, name, "internal", e.what(), t0);
    }
    session.finish();

    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = name;
    doc["tool_version"] = kToolVersion;
    doc["budgets"] = budgets_json(budgets);
    doc["status"] = status_name(o.status);
    doc["inputs"] = o.inputs;
    doc["outputs"] = o.outputs;
    doc["timings"] = Json{{"total_ms", millis(t0)}, {"cache", session.cache_report()}};
    emit(out, doc);
    if (a.pretty) {
        err << "symsplit " << name << " [" << status_name(o.status) << "]\n";
        for (auto& line : o.summary) err << "  " << line << '\n';
    }
    return code;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace symsplit
