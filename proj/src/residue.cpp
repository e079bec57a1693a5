#include "symsplit/residue.hpp"

#include "symsplit/errors.hpp"
#include "symsplit/numtheory.hpp"

namespace symsplit {

const char* character_code(CharacterValue v)
{
    switch (v) {
    case CharacterValue::Zero: return "0";
    case CharacterValue::One: return "1";
    case CharacterValue::Epsilon: return "w";
    case CharacterValue::EpsilonSquared: return "w2";
    }
    return "?";
}

namespace {

int char_exp(CharacterValue v)
{
    switch (v) {
    case CharacterValue::One: return 0;
    case CharacterValue::Epsilon: return 1;
    case CharacterValue::EpsilonSquared: return 2;
    default: return -1;
    }
}

CharacterValue from_exp(int e)
{
    switch (((e % 3) + 3) % 3) {
    case 0: return CharacterValue::One;
    case 1: return CharacterValue::Epsilon;
    default: return CharacterValue::EpsilonSquared;
    }
}

// Elements of F_p[t]/(t^2+t+1) as (x, y) = x + y t.
struct Fp2 {
    mpz_class x, y;
};

Fp2 fp2_mul(const Fp2& u, const Fp2& v, const mpz_class& p)
{
    mpz_class yy = u.y * v.y;
    return {mod_floor(u.x * v.x - yy, p), mod_floor(u.x * v.y + u.y * v.x - yy, p)};
}

Fp2 fp2_pow(Fp2 b, const mpz_class& e, const mpz_class& p)
{
    Fp2 r{1, 0};
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = fp2_mul(r, r, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = fp2_mul(r, b, p);
    }
    return r;
}

} // namespace

CharacterValue character_mul(CharacterValue x, CharacterValue y)
{
    if (x == CharacterValue::Zero || y == CharacterValue::Zero) return CharacterValue::Zero;
    return from_exp(char_exp(x) + char_exp(y));
}

CharacterValue character_conj(CharacterValue x)
{
    if (x == CharacterValue::Zero) return x;
    return from_exp(2 * char_exp(x));
}

CharacterValue cubic_character(const EisensteinInt& alpha, const EisensteinInt& pi)
{
    if (!is_eisenstein_prime(pi)) fail(ErrorCode::NotPrime, pi.str() + " is not an Eisenstein prime");
    if (divides(pi, EisensteinInt(3))) fail(ErrorCode::InvalidArgument, "cubic character at a prime above 3");
    mpz_class n = pi.norm();
    if (is_prime(n)) {
        const mpz_class& p = n;
        // the root r of x^2+x+1 with pi | r - w
        mpz_class r;
        {
            // pi = a + b w and w = r mod pi gives a + b r = 0; b is a unit mod p
            mpz_class binv;
            mpz_class bb = mod_floor(pi.b, p);
            if (!mpz_invert(binv.get_mpz_t(), bb.get_mpz_t(), p.get_mpz_t()))
                fail(ErrorCode::Inconsistent, "split prime with b = 0 mod p");
            r = mod_floor(-pi.a * binv, p);
        }
        SYMSPLIT_CHECK(mod_floor(r * r + r + 1, p) == 0, "w image is a cube root of unity");
        mpz_class v = mod_floor(alpha.a + alpha.b * r, p);
        if (v == 0) return CharacterValue::Zero;
        mpz_class e = (p - 1) / 3, t;
        mpz_powm(t.get_mpz_t(), v.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (t == 1) return CharacterValue::One;
        if (t == r) return CharacterValue::Epsilon;
        SYMSPLIT_CHECK(t == mod_floor(r * r, p), "character value is a cube root of unity");
        return CharacterValue::EpsilonSquared;
    }
    mpz_class p;
    mpz_sqrt(p.get_mpz_t(), n.get_mpz_t());
    Fp2 v{mod_floor(alpha.a, p), mod_floor(alpha.b, p)};
    if (v.x == 0 && v.y == 0) return CharacterValue::Zero;
    Fp2 t = fp2_pow(v, (n - 1) / 3, p);
    if (t.x == 1 && t.y == 0) return CharacterValue::One;
    if (t.x == 0 && t.y == 1) return CharacterValue::Epsilon;
    SYMSPLIT_CHECK(t.x == mod_floor(-1, p) && t.y == mod_floor(-1, p), "character value is a cube root of unity");
    return CharacterValue::EpsilonSquared;
}

bool q_power_residue_mod_p(const mpz_class& alpha, const mpz_class& p, const mpz_class& q)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, p.get_str() + " is not prime");
    if (p == q) fail(ErrorCode::InvalidArgument, "p == q");
    if (mod_floor(alpha, p) == 0) fail(ErrorCode::NotCoprime, "p divides alpha");
    mpz_class d, pm1 = p - 1;
    mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), pm1.get_mpz_t());
    mpz_class e = pm1 / d, a = mod_floor(alpha, p), t;
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return t == 1;
}

bool cubic_residue_of_field_element(const EisensteinInt& alpha, const mpz_class& p)
{
    if (p == 3) fail(ErrorCode::InvalidArgument, "p = 3");
    auto sp = factor_rational_prime(p);
    std::vector<EisensteinInt> above{sp.pi};
    if (sp.kind == PrimeKind::Split) above.push_back(sp.pi_conj);
    bool all_one = true;
    for (auto& pi : above) {
        CharacterValue c = cubic_character(alpha, pi);
        if (c == CharacterValue::Zero) fail(ErrorCode::NotCoprime, "alpha is not coprime to p");
        if (c != CharacterValue::One) all_one = false;
    }
    return all_one;
}

ResidueField::ResidueField(u64 p, int f) : p_(p), f_(f)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, "residue field characteristic not prime");
    if (f < 1) fail(ErrorCode::InvalidArgument, "residue degree must be positive");
    if (f == 1) {
        mod_ = {0, 1};
    } else if (f == 2) {
        if (p % 3 == 2) {
            mod_ = {1, 1, 1};
        } else {
            u64 n = 2;
            while (powmod(n, (p - 1) / 2, p) != p - 1) ++n;
            mod_ = {p - n, 0, 1};
        }
    } else {
        fp::Poly g(f + 1, 0);
        g[f] = 1;
        for (u64 k = 0;; ++k) {
            u64 t = k;
            for (int i = 0; i < f; ++i) {
                g[i] = t % p;
                t /= p;
            }
            if (t) fail(ErrorCode::Inconsistent, "no irreducible polynomial found");
            if (fp::is_irreducible(g, p)) break;
        }
        mod_ = g;
    }
}

ResidueField::ResidueField(u64 p, fp::Poly modulus) : p_(p), f_(fp::degree(modulus)), mod_(std::move(modulus))
{
    if (!fp::is_irreducible(mod_, p_)) fail(ErrorCode::InvalidArgument, "modulus not irreducible");
    mod_ = fp::monic(mod_, p_);
}

mpz_class ResidueField::order() const
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, f_);
    return r;
}

namespace {

int moebius(u64 n)
{
    int mu = 1;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

} // namespace

fp::Poly cyclotomic_poly_mod(u64 l, u64 p)
{
    // Phi_l = prod_{d | l} (x^d - 1)^{mu(l/d)}, computed by exact division
    fp::Poly num{1}, den{1};
    for (u64 d = 1; d <= l; ++d) {
        if (l % d) continue;
        int mu = moebius(l / d);
        if (mu == 0) continue;
        fp::Poly xd(d + 1, 0);
        xd[d] = 1;
        xd[0] = p - 1;
        if (mu > 0) num = fp::mul(num, xd, p);
        else den = fp::mul(den, xd, p);
    }
    fp::Poly q, r;
    fp::divmod(num, den, p, q, r);
    SYMSPLIT_CHECK(r.empty(), "cyclotomic division exact");
    return q;
}

PowerCharacters power_characters_rational(const mpz_class& alpha, u64 l, u64 p)
{
    if (!is_prime(l) || !is_prime(p)) fail(ErrorCode::NotPrime, "power character needs primes l, p");
    if (p == l) fail(ErrorCode::InvalidArgument, "p == l");
    PowerCharacters out;
    out.f = (int)multiplicative_order(p % l, l);
    fp::Poly phi = cyclotomic_poly_mod(l, p);
    out.primes = fp::equal_degree_factor(phi, out.f, p);
    u64 a = mod_floor(alpha, mpz_class((unsigned long)p)).get_ui();
    for (auto& g : out.primes) {
        if (a == 0) {
            out.exponents.push_back(-1);
            continue;
        }
        ResidueField F(p, g);
        mpz_class e = (F.order() - 1) / l;
        auto v = F.pow(F.from_int(a), e);
        auto t = F.gen();
        auto pw = F.from_int(1);
        int c = -1;
        for (u64 k = 0; k < l; ++k) {
            if (pw == v) { c = (int)k; break; }
            pw = F.mul(pw, t);
        }
        SYMSPLIT_CHECK(c >= 0, "power character value is an l-th root of unity");
        out.exponents.push_back(c);
    }
    return out;
}

} // namespace symsplit
