#pragma once

// Splitting of the cubic symbol algebras (alpha, b / K, w) over K = Q(w),
// alpha = m rational and cube-free. The algebra splits exactly when b is a
// relative norm from L = K(cbrt m), so every Split verdict carries beta in L
// with N_{L/K}(beta) = u * b.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symsplit/classgrp.hpp"
#include "symsplit/eisenstein.hpp"

namespace symsplit {

// Field data for one m, computed on first use. m is replaced by its cube-free
// part, which gives the same field and the same algebra classes.
class FieldContext {
public:
    FieldContext(const mpz_class& m, const Budgets& budgets);

    const mpz_class& m() const { return m_; }
    const mpz_class& m_input() const { return m_input_; }
    const Budgets& budgets() const { return budgets_; }
    OrderPtr order() const { return O_; }
    const UnitGroupData& units();
    const ClassGroupData& class_group();
    bool has_units() const { return U_.has_value(); }
    bool has_class_group() const { return cg_.has_value(); }

    void set_units(UnitGroupData U) { U_ = std::move(U); }
    void set_class_group(ClassGroupData cg) { cg_ = std::move(cg); }

private:
    mpz_class m_input_, m_;
    Budgets budgets_;
    OrderPtr O_;
    std::optional<UnitGroupData> U_;
    std::optional<ClassGroupData> cg_;
};

enum class Tristate { No, Yes, Unknown };
const char* tristate_name(Tristate t);

struct NormEquationResult {
    Tristate solvable = Tristate::Unknown;
    FieldElement beta;    // when Yes: N_{L/K}(beta) = unit * target
    EisensteinInt unit{1};
    std::vector<std::string> trace;
};

// Decide whether unit * target = N_{L/K}(beta) for some beta in L*, with
// unit = 1 unless allow_unit. target must be nonzero and prime to 3.
NormEquationResult solve_norm_equation(FieldContext& F, const EisensteinInt& target, bool allow_unit);

enum class Verdict { Split, Division, Indeterminate };
const char* verdict_name(Verdict v);

enum class Rule { R3_1, P3_2, P3_5, P3_6, T3_7, P3_8, P3_9, NormOracle };
const char* rule_name(Rule r);

struct SymbolAlgebraDescriptor {
    unsigned q = 3;
    EisensteinInt a;      // the alpha slot
    EisensteinInt b_base; // a rational prime or a prime of Z[w]
    unsigned long b_exponent = 1;
    bool unit_allowed = false;
};

// Exponent taken mod 3; (alpha, b^3k) is split since b^3k = N(b^k).
SymbolAlgebraDescriptor reduce_exponent(const SymbolAlgebraDescriptor& d);

struct SplitDecision {
    Verdict verdict = Verdict::Indeterminate;
    Rule rule = Rule::NormOracle;
    EisensteinInt b;         // the second slot before the unit
    unsigned long exponent = 0;
    EisensteinInt unit{1};   // verdicts refer to (alpha, unit * b)
    std::optional<FieldElement> certificate; // N_{L/K}(certificate) = unit * b
    std::optional<bool> residue;
    std::optional<unsigned long> h_p;
    std::optional<mpz_class> h_L;
    Tristate oracle = Tristate::Unknown; // norm-equation cross-check of the verdict
    std::vector<std::string> notes;
};

// (alpha, p^E) with E given by the caller.
SplitDecision decide_exponent(FieldContext& F, const mpz_class& p, unsigned long E, bool allow_unit);
SplitDecision decide_main(FieldContext& F, const mpz_class& p);
SplitDecision decide_hL_exponent(FieldContext& F, const mpz_class& p);
SplitDecision decide_gcd_variant(FieldContext& F, const mpz_class& p);
// Two decisions: at exponent h_pi and at gcd(h_pi, 3).
std::vector<SplitDecision> decide_pi_variant(FieldContext& F, const EisensteinInt& pi);
SplitDecision decide_division(FieldContext& F, const mpz_class& p);
SplitDecision decide_classnumber_one(FieldContext& F, const mpz_class& p);

// The certificate's relative norm equals unit * b^exponent exactly.
bool certificate_holds(const SplitDecision& d);

} // namespace symsplit
