#include "symsplit/cyclotomic.hpp"

#include <algorithm>
#include <map>

#include "symsplit/errors.hpp"

namespace symsplit {

CyclotomicSplitShape decomposition_shape(u64 l, u64 p)
{
    if (l < 3) fail(ErrorCode::InvalidArgument, "l must be at least 3");
    if (!is_prime(p)) fail(ErrorCode::NotPrime, "decomposition_shape: p not prime");
    if (l % p == 0) fail(ErrorCode::NotCoprime, "decomposition_shape: p divides l");
    CyclotomicSplitShape s;
    s.l = l;
    s.p = p;
    s.f = multiplicative_order(p % l, l);
    s.r = euler_phi(l) / s.f;
    return s;
}

const char* behavior_name(KummerBehavior b)
{
    switch (b) {
    case KummerBehavior::RamifiedPower: return "ramified";
    case KummerBehavior::Inert: return "inert";
    case KummerBehavior::SplitsIntoL: return "split";
    }
    return "?";
}

u64 KummerSplitShape::total_degree() const
{
    u64 t = 0;
    for (auto& x : parts) t += x.e * x.f * x.count;
    return t;
}

KummerSplitShape kummer_shape(u64 l, const std::vector<int>& exponents, const CyclotomicSplitShape& shape)
{
    if (!is_prime(l)) fail(ErrorCode::InvalidArgument, "kummer_shape needs prime l");
    if (shape.l != l) fail(ErrorCode::InvalidArgument, "kummer_shape: shape for a different l");
    if (exponents.size() != shape.r)
        fail(ErrorCode::InvalidArgument, "kummer_shape: expected one character per prime above p");
    KummerSplitShape out;
    std::map<std::pair<u64, u64>, u64> agg;
    for (int c : exponents) {
        if (c < 0) {
            out.per_prime.push_back(KummerBehavior::RamifiedPower);
            out.outside_splitting_scope = true;
            agg[{l, shape.f}] += 1;
        } else if (c % (int)l != 0) {
            out.per_prime.push_back(KummerBehavior::Inert);
            agg[{1, shape.f * l}] += 1;
        } else {
            out.per_prime.push_back(KummerBehavior::SplitsIntoL);
            agg[{1, shape.f}] += l;
        }
    }
    for (auto& [k, n] : agg) out.parts.push_back({k.first, k.second, n});
    return out;
}

KummerSplitShape kummer_shape(const std::vector<CharacterValue>& chars, const CyclotomicSplitShape& shape)
{
    std::vector<int> ex;
    for (auto c : chars) {
        switch (c) {
        case CharacterValue::Zero: ex.push_back(-1); break;
        case CharacterValue::One: ex.push_back(0); break;
        case CharacterValue::Epsilon: ex.push_back(1); break;
        case CharacterValue::EpsilonSquared: ex.push_back(2); break;
        }
    }
    return kummer_shape(3, ex, shape);
}

KummerSplitShape kummer_shape_for(const mpz_class& m, u64 l, u64 p)
{
    auto shape = decomposition_shape(l, p);
    if (l == 3) {
        auto sp = factor_rational_prime(mpz_class((unsigned long)p));
        std::vector<EisensteinInt> above{sp.pi};
        if (sp.kind == PrimeKind::Split) above.push_back(sp.pi_conj);
        std::vector<CharacterValue> chars;
        for (auto& pi : above) chars.push_back(cubic_character(EisensteinInt(m), pi));
        return kummer_shape(chars, shape);
    }
    auto pc = power_characters_rational(m, l, p);
    return kummer_shape(l, pc.exponents, shape);
}

} // namespace symsplit
