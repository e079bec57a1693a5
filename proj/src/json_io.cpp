#include "symsplit/json_io.hpp"

#include "symsplit/errors.hpp"
#include "symsplit/numtheory.hpp"

namespace symsplit {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::size_t> index_list(const Json& j)
{
    std::vector<std::size_t> v;
    for (auto& x : j) v.push_back(x.get<std::size_t>());
    return v;
}

} // namespace

Json to_json(const mpz_class& z) { return z.get_str(); }

Json to_json(const mpq_class& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Json to_json(const ZVec& v)
{
    Json a = Json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const QVec& v)
{
    Json a = Json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const ZMat& A)
{
    Json a = Json::array();
    for (auto& row : A) a.push_back(to_json(row));
    return a;
}

Json to_json(const EisensteinInt& z) { return Json{{"a", z.a.get_str()}, {"b", z.b.get_str()}}; }

Json to_json(const FieldElement& x)
{
    Json j;
    j["coords"] = to_json(x.coords());
    j["power_basis"] = to_json(x.power_basis());
    j["relative_norm"] = Json{{"a", to_json(x.relative_norm().a)}, {"b", to_json(x.relative_norm().b)}};
    return j;
}

Json to_json(const PrimeIdeal& P)
{
    Json j;
    j["p"] = to_json(P.p);
    j["e"] = P.e;
    j["f"] = P.f;
    j["gen2"] = to_json(P.gen2);
    j["hnf"] = to_json(P.ideal.H);
    j["norm"] = to_json(P.ideal.norm);
    j["tau"] = to_json(P.tau_matrix);
    j["below"] = to_json(P.below);
    return j;
}

Json to_json(const UnitGroupData& U)
{
    Json j;
    j["torsion_generator"] = to_json(U.torsion_generator);
    Json f = Json::array();
    for (auto& u : U.fundamental) f.push_back(to_json(u));
    j["fundamental"] = f;
    Json logs = Json::array();
    for (auto& l : U.logs) logs.push_back(Json::array({l[0], l[1], l[2]}));
    j["logs"] = logs;
    j["regulator"] = U.regulator.str(30, std::ios_base::fixed);
    j["certified"] = U.certified;
    j["scanned_radius"] = U.scanned_radius;
    j["cells"] = U.cells;
    return j;
}

Json to_json(const ClassGroupData& cg)
{
    Json j;
    j["complete"] = cg.complete;
    j["certified"] = cg.certified;
    j["h_L"] = to_json(cg.h_L);
    j["elementary_divisors"] = to_json(cg.elementary_divisors);
    j["minkowski_bound"] = cg.minkowski_bound;
    Json fb = Json::array();
    for (auto& P : cg.factor_base) fb.push_back(to_json(P));
    j["factor_base"] = fb;
    j["sigma"] = cg.sigma;
    j["small"] = cg.small;
    j["substitution"] = to_json(cg.substitution);
    j["relations"] = to_json(cg.relations);
    j["to_invariants"] = to_json(cg.to_invariants);
    j["generators"] = to_json(cg.generators);
    j["sigma_action"] = to_json(cg.sigma_action);
    j["candidates_tried"] = cg.candidates_tried;
    j["relations_found"] = cg.relations_found;
    j["analytic_ratio"] = cg.analytic_ratio;
    j["note"] = cg.note;
    return j;
}

Json to_json(const KummerSplitShape& s)
{
    Json parts = Json::array();
    for (auto& p : s.parts) parts.push_back(Json{{"e", p.e}, {"f", p.f}, {"count", p.count}});
    return parts;
}

Json to_json(const SplitDecision& d)
{
    Json j;
    j["verdict"] = verdict_name(d.verdict);
    j["rule"] = rule_name(d.rule);
    j["b"] = to_json(d.b);
    j["exponent"] = std::to_string(d.exponent);
    j["unit"] = to_json(d.unit);
    j["h_p"] = d.h_p ? Json(std::to_string(*d.h_p)) : Json(nullptr);
    j["h_L"] = d.h_L ? to_json(*d.h_L) : Json(nullptr);
    j["residue"] = d.residue ? Json(*d.residue) : Json(nullptr);
    j["oracle"] = tristate_name(d.oracle);
    if (d.certificate) {
        j["certificate"] = to_json(*d.certificate);
        j["certificate_holds"] = certificate_holds(d);
    } else {
        j["certificate"] = nullptr;
    }
    j["notes"] = d.notes;
    return j;
}

mpz_class mpz_from_json(const Json& j)
{
    if (j.is_string()) return from_string(j.get<std::string>());
    if (j.is_number_integer()) return mpz_class(j.dump());
    fail(ErrorCode::Parse, "expected an integer as a decimal string");
}

mpq_class mpq_from_json(const Json& j)
{
    if (!j.is_string()) return mpq_class(mpz_from_json(j));
    auto s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return mpq_class(from_string(s));
    mpq_class q(from_string(s.substr(0, slash)), from_string(s.substr(slash + 1)));
    if (q.get_den() == 0) fail(ErrorCode::Parse, "zero denominator");
    q.canonicalize();
    return q;
}

ZVec zvec_from_json(const Json& j)
{
    if (!j.is_array()) fail(ErrorCode::Parse, "expected an array of integers");
    ZVec v;
    for (auto& x : j) v.push_back(mpz_from_json(x));
    return v;
}

ZMat zmat_from_json(const Json& j)
{
    if (!j.is_array()) fail(ErrorCode::Parse, "expected a matrix");
    ZMat A;
    for (auto& row : j) A.push_back(zvec_from_json(row));
    return A;
}

EisensteinInt eisenstein_from_json(const Json& j)
{
    if (j.is_string()) return parse_eisenstein(j.get<std::string>());
    return EisensteinInt(mpz_from_json(field(j, "a")), mpz_from_json(field(j, "b")));
}

PrimeIdeal prime_from_json(const Json& j)
{
    PrimeIdeal P;
    P.p = mpz_from_json(field(j, "p"));
    P.e = field(j, "e").get<unsigned>();
    P.f = field(j, "f").get<unsigned>();
    P.gen2 = zvec_from_json(field(j, "gen2"));
    P.ideal.H = zmat_from_json(field(j, "hnf"));
    P.ideal.norm = mpz_from_json(field(j, "norm"));
    P.tau_matrix = zmat_from_json(field(j, "tau"));
    P.below = eisenstein_from_json(field(j, "below"));
    return P;
}

UnitGroupData units_from_json(const NumberFieldOrder& O, const Json& j)
{
    UnitGroupData U;
    U.torsion_generator = zvec_from_json(field(j, "torsion_generator"));
    for (auto& u : field(j, "fundamental")) U.fundamental.push_back(zvec_from_json(u));
    for (auto& l : field(j, "logs")) U.logs.push_back({l.at(0).get<double>(), l.at(1).get<double>(), l.at(2).get<double>()});
    if (U.fundamental.size() != 2 || U.logs.size() != 2) fail(ErrorCode::Parse, "unit group needs two units");
    U.regulator = unit_regulator(O, U.fundamental);
    U.certified = field(j, "certified").get<bool>();
    U.scanned_radius = field(j, "scanned_radius").get<double>();
    U.cells = field(j, "cells").get<std::uint64_t>();
    return U;
}

ClassGroupData class_group_from_json(const Json& j)
{
    ClassGroupData cg;
    cg.complete = field(j, "complete").get<bool>();
    cg.certified = field(j, "certified").get<bool>();
    cg.h_L = mpz_from_json(field(j, "h_L"));
    cg.elementary_divisors = zvec_from_json(field(j, "elementary_divisors"));
    cg.minkowski_bound = field(j, "minkowski_bound").get<double>();
    for (auto& P : field(j, "factor_base")) cg.factor_base.push_back(prime_from_json(P));
    cg.sigma = index_list(field(j, "sigma"));
    cg.small = index_list(field(j, "small"));
    cg.substitution = zmat_from_json(field(j, "substitution"));
    cg.relations = zmat_from_json(field(j, "relations"));
    cg.to_invariants = zmat_from_json(field(j, "to_invariants"));
    cg.generators = zmat_from_json(field(j, "generators"));
    cg.sigma_action = zmat_from_json(field(j, "sigma_action"));
    cg.candidates_tried = field(j, "candidates_tried").get<std::uint64_t>();
    cg.relations_found = field(j, "relations_found").get<std::size_t>();
    cg.analytic_ratio = field(j, "analytic_ratio").get<double>();
    cg.note = field(j, "note").get<std::string>();
    std::size_t n = cg.factor_base.size();
    if (cg.sigma.size() != n || cg.substitution.size() != n) fail(ErrorCode::Parse, "class group tables disagree in size");
    for (auto s : cg.sigma)
        if (s >= n) fail(ErrorCode::Parse, "sigma index out of range");
    for (auto s : cg.small)
        if (s >= n) fail(ErrorCode::Parse, "small-prime index out of range");
    return cg;
}

} // namespace symsplit
