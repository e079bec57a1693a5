#include "symsplit/eisenstein.hpp"

#include <algorithm>
#include <cctype>

#include "symsplit/errors.hpp"
#include "symsplit/numtheory.hpp"

namespace symsplit {

bool EisensteinInt::is_unit() const { return norm() == 1; }

std::string EisensteinInt::str() const
{
    std::string s = a.get_str();
    if (b < 0) s += "-" + mpz_class(-b).get_str() + "*w";
    else s += "+" + b.get_str() + "*w";
    return s;
}

bool operator==(const EisensteinInt& x, const EisensteinInt& y) { return x.a == y.a && x.b == y.b; }

bool operator<(const EisensteinInt& x, const EisensteinInt& y)
{
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) { return {x.a + y.a, x.b + y.b}; }
EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) { return {x.a - y.a, x.b - y.b}; }
EisensteinInt operator-(const EisensteinInt& x) { return {-x.a, -x.b}; }

EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y)
{
    mpz_class bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
}

EisensteinInt pow(EisensteinInt x, unsigned long e)
{
    EisensteinInt r(1);
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

EisensteinInt parse_eisenstein(const std::string& s0)
{
    std::string s;
    for (char c : s0)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) fail(ErrorCode::Parse, "empty Eisenstein integer");
    EisensteinInt r(0);
    std::size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (any) {
            fail(ErrorCode::Parse, "bad Eisenstein integer: " + s0);
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
        std::string digits = s.substr(i, j - i);
        i = j;
        bool is_w = false;
        if (i < s.size() && s[i] == '*') {
            if (digits.empty()) fail(ErrorCode::Parse, "bad Eisenstein integer: " + s0);
            ++i;
            if (i >= s.size() || s[i] != 'w') fail(ErrorCode::Parse, "bad Eisenstein integer: " + s0);
            is_w = true;
            ++i;
        } else if (i < s.size() && s[i] == 'w') {
            if (!digits.empty()) fail(ErrorCode::Parse, "bad Eisenstein integer: " + s0);
            is_w = true;
            ++i;
        }
        if (digits.empty() && !is_w) fail(ErrorCode::Parse, "bad Eisenstein integer: " + s0);
        mpz_class v = digits.empty() ? mpz_class(1) : from_string(digits);
        if (sign < 0) v = -v;
        if (is_w) r.b += v;
        else r.a += v;
        any = true;
    }
    return r;
}

DivMod divmod(const EisensteinInt& z, const EisensteinInt& w)
{
    if (w.is_zero()) fail(ErrorCode::DivisionByZero, "Eisenstein divmod by zero");
    mpz_class n = w.norm();
    EisensteinInt t = z * w.conj();
    EisensteinInt q{round_div(t.a, n), round_div(t.b, n)};
    EisensteinInt r = z - q * w;
    SYMSPLIT_CHECK(r.norm() < n, "Euclidean remainder bound");
    return {q, r};
}

bool divides(const EisensteinInt& d, const EisensteinInt& z)
{
    if (d.is_zero()) return z.is_zero();
    mpz_class n = d.norm();
    EisensteinInt t = z * d.conj();
    return mpz_divisible_p(t.a.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(t.b.get_mpz_t(), n.get_mpz_t());
}

EisensteinInt exact_div(const EisensteinInt& z, const EisensteinInt& d)
{
    if (d.is_zero()) fail(ErrorCode::DivisionByZero, "Eisenstein exact_div by zero");
    mpz_class n = d.norm();
    EisensteinInt t = z * d.conj();
    if (!mpz_divisible_p(t.a.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(t.b.get_mpz_t(), n.get_mpz_t()))
        fail(ErrorCode::InvalidArgument, "exact_div: not divisible");
    return {t.a / n, t.b / n};
}

std::vector<EisensteinInt> units()
{
    return {EisensteinInt(1), EisensteinInt(0, 1), EisensteinInt(-1, -1),
            EisensteinInt(-1), EisensteinInt(0, -1), EisensteinInt(1, 1)};
}

int unit_index(const EisensteinInt& u)
{
    EisensteinInt x(1), g(0, -1); // -w generates the unit group
    for (int k = 0; k < 6; ++k) {
        if (x == u) return k;
        x = x * g;
    }
    fail(ErrorCode::InvalidArgument, "not a unit: " + u.str());
}

namespace {

const EisensteinInt one_minus_w{1, -1};

bool primary(const EisensteinInt& z)
{
    return mod_floor(z.a, 3) == 1 && mod_floor(z.b, 3) == 0;
}

} // namespace

EisensteinInt canonical(const EisensteinInt& z0)
{
    if (z0.is_zero()) return z0;
    EisensteinInt z = z0;
    unsigned k = 0;
    while (divides(one_minus_w, z)) {
        z = exact_div(z, one_minus_w);
        ++k;
    }
    EisensteinInt c;
    bool found = false;
    for (auto& u : units()) {
        EisensteinInt t = z * u;
        if (primary(t)) {
            c = t;
            found = true;
            break;
        }
    }
    SYMSPLIT_CHECK(found, "primary associate exists");
    return c * pow(one_minus_w, k);
}

EisensteinInt gcd(EisensteinInt z, EisensteinInt w)
{
    if (z.is_zero() && w.is_zero()) fail(ErrorCode::InvalidArgument, "gcd(0, 0)");
    while (!w.is_zero()) {
        EisensteinInt r = divmod(z, w).r;
        z = std::move(w);
        w = std::move(r);
    }
    return canonical(z);
}

namespace {

// Cornacchia-style: the reduced form a^2 - ab + b^2 = p via a root of x^2+x+1.
EisensteinInt split_prime(const mpz_class& p)
{
    // r with r^2 + r + 1 = 0 mod p: r = (-1 + sqrt(-3)) / 2
    mpz_class r;
    {
        mpz_class x = -3, s;
        x = mod_floor(x, p);
        // Tonelli-Shanks through GMP: find sqrt of -3 mod p
        mpz_class q = p - 1;
        unsigned long e = mpz_scan1(q.get_mpz_t(), 0);
        q >>= e;
        mpz_class z = 2;
        while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
        mpz_class c, t, R;
        mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_powm(t.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_class qq = (q + 1) / 2;
        mpz_powm(R.get_mpz_t(), x.get_mpz_t(), qq.get_mpz_t(), p.get_mpz_t());
        unsigned long M = e;
        while (t != 1) {
            unsigned long i = 0;
            mpz_class tt = t;
            while (tt != 1) {
                tt = tt * tt % p;
                ++i;
            }
            mpz_class b = c;
            for (unsigned long j = 0; j < M - i - 1; ++j) b = b * b % p;
            M = i;
            c = b * b % p;
            t = t * c % p;
            R = R * b % p;
        }
        s = R;
        mpz_class inv2 = (p + 1) / 2;
        r = mod_floor((s - 1) * inv2, p);
    }
    // gcd(p, r - w) has norm p
    EisensteinInt g = gcd(EisensteinInt(p), EisensteinInt(r, -1));
    SYMSPLIT_CHECK(g.norm() == p, "split prime has norm p");
    return g;
}

} // namespace

RationalPrimeSplitting factor_rational_prime(const mpz_class& p)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, p.get_str() + " is not prime");
    if (p == 3) return {PrimeKind::Ramified, one_minus_w, {}};
    if (mod_floor(p, 3) == 2) return {PrimeKind::Inert, canonical(EisensteinInt(p)), {}};
    EisensteinInt pi = split_prime(p);
    EisensteinInt pc = canonical(pi.conj());
    if (pc < pi) std::swap(pi, pc);
    return {PrimeKind::Split, pi, pc};
}

bool is_eisenstein_prime(const EisensteinInt& z)
{
    if (z.is_zero()) return false;
    mpz_class n = z.norm();
    if (is_prime(n)) return true;
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), 2) && is_prime(r) && mod_floor(r, 3) == 2)
        return true;
    return false;
}

EisensteinInt EisensteinFactorization::refold() const
{
    EisensteinInt r = unit;
    for (auto& [q, e] : factors) r = r * pow(q, e);
    return r;
}

EisensteinFactorization factor(const EisensteinInt& z, const mpz_class& bound)
{
    if (z.is_zero()) fail(ErrorCode::InvalidArgument, "factor(0)");
    EisensteinFactorization out;
    EisensteinInt rest = z;
    std::vector<std::pair<EisensteinInt, unsigned>> fs;
    for (auto& [p, e] : factor_integer(z.norm(), bound)) {
        (void)e;
        auto sp = factor_rational_prime(p);
        std::vector<EisensteinInt> cands{sp.pi};
        if (sp.kind == PrimeKind::Split) cands.push_back(sp.pi_conj);
        for (auto& pi : cands) {
            unsigned k = 0;
            while (divides(pi, rest)) {
                rest = exact_div(rest, pi);
                ++k;
            }
            if (k) fs.push_back({pi, k});
        }
    }
    SYMSPLIT_CHECK(rest.is_unit(), "factorization leaves a unit");
    out.unit = rest;
    out.factors = std::move(fs);
    return out;
}

EisensteinFactorization factor(const EisensteinInt& z)
{
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 60);
    return factor(z, big);
}

} // namespace symsplit
