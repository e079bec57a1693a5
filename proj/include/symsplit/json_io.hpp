#pragma once

// JSON forms of the library types. Integers from the mathematics are decimal
// strings, rationals are "num/den" strings, and structural counts are plain
// JSON numbers.

#include <string>

#include "json.hpp"

#include "symsplit/algebra.hpp"
#include "symsplit/classgrp.hpp"
#include "symsplit/cyclotomic.hpp"
#include "symsplit/lattice.hpp"

namespace symsplit {

using Json = nlohmann::ordered_json;

Json to_json(const mpz_class& z);
Json to_json(const mpq_class& q);
Json to_json(const ZVec& v);
Json to_json(const QVec& v);
Json to_json(const ZMat& A);
Json to_json(const EisensteinInt& z);
Json to_json(const FieldElement& x);
Json to_json(const PrimeIdeal& P);
Json to_json(const UnitGroupData& U);
Json to_json(const ClassGroupData& cg);
Json to_json(const KummerSplitShape& s);
Json to_json(const SplitDecision& d);

mpz_class mpz_from_json(const Json& j);
mpq_class mpq_from_json(const Json& j);
ZVec zvec_from_json(const Json& j);
ZMat zmat_from_json(const Json& j);
EisensteinInt eisenstein_from_json(const Json& j);
PrimeIdeal prime_from_json(const Json& j);
// Logs and regulator are recomputed or restored exactly, so a loaded unit
// group is indistinguishable from a fresh one.
UnitGroupData units_from_json(const NumberFieldOrder& O, const Json& j);
ClassGroupData class_group_from_json(const Json& j);

} // namespace symsplit
