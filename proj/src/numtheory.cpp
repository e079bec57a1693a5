#include "symsplit/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "symsplit/errors.hpp"

namespace symsplit {

const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::NotCubeFree: return "not_cube_free";
    case ErrorCode::NotCoprime: return "not_coprime";
    case ErrorCode::UnsupportedPrime: return "unsupported_prime";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::PreconditionFailed: return "precondition_failed";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::Parse: return "parse_error";
    }
    return "unknown";
}

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m)
{
    mpz_class x = a, mm = m, r;
    if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t()))
        fail(ErrorCode::DivisionByZero, "invmod: not invertible");
    return r.get_ui();
}

bool is_prime(const mpz_class& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic for 64-bit inputs
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<u64> primes_up_to(u64 n)
{
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> sieve(n + 1, true);
    for (u64 i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return out;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long seed, u64 max_iter)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::mt19937_64 rng(seed);
    mpz_class y = rng() % n, c = 1 + rng() % (n - 1), g = 1, q = 1, x, ys;
    u64 r = 1, m = 64, iter = 0;
    auto f = [&](const mpz_class& v) {
        mpz_class t = v * v + c;
        return mpz_class(t % n);
    };
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        do {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                mpz_class d = abs(x - y);
                q = (q * d) % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            iter += m;
        } while (k < r && g == 1);
        r *= 2;
        if (iter > max_iter) return 0;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            mpz_class d = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

void split_into(const mpz_class& n, std::vector<mpz_class>& primes, const mpz_class& bound)
{
    if (n == 1) return;
    if (is_prime(n)) { primes.push_back(n); return; }
    for (unsigned long seed = 1; seed < 64; ++seed) {
        mpz_class d = pollard_brent(n, seed, 2000000);
        if (d != 0 && d != 1 && d != n) {
            split_into(d, primes, bound);
            split_into(n / d, primes, bound);
            return;
        }
    }
    (void)bound;
    throw BudgetExceeded("factor_integer: could not split " + n.get_str());
}

} // namespace

std::vector<std::pair<mpz_class, unsigned>> factor_integer(mpz_class n, const mpz_class& bound)
{
    if (n == 0) fail(ErrorCode::InvalidArgument, "factor_integer(0)");
    n = abs(n);
    std::vector<mpz_class> primes;
    for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
        if ((mpz_class)p * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (n > bound && !is_prime(n))
            throw BudgetExceeded("factor_integer: cofactor exceeds factoring bound");
        split_into(n, primes, bound);
    }
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<mpz_class, unsigned>> out;
    for (auto& p : primes) {
        if (!out.empty() && out.back().first == p) ++out.back().second;
        else out.push_back({p, 1});
    }
    return out;
}

std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n)
{
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 10, 60);
    return factor_integer(n, big);
}

u64 multiplicative_order(u64 a, u64 n)
{
    if (std::gcd(a, n) != 1) fail(ErrorCode::NotCoprime, "multiplicative_order: gcd != 1");
    u64 phi = euler_phi(n);
    u64 ord = phi;
    for (auto& [q, e] : factor_integer(mpz_class((unsigned long)phi))) {
        u64 qq = q.get_ui();
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(a, ord / qq, n) == 1 % n) ord /= qq;
            else break;
        }
    }
    return ord;
}

u64 euler_phi(u64 n)
{
    u64 r = n;
    for (auto& [q, e] : factor_integer(mpz_class((unsigned long)n))) {
        (void)e;
        u64 qq = q.get_ui();
        r = r / qq * (qq - 1);
    }
    return r;
}

bool is_cube_free(const mpz_class& m)
{
    if (m == 0) return false;
    for (auto& [q, e] : factor_integer(m)) {
        (void)q;
        if (e >= 3) return false;
    }
    return true;
}

mpz_class cube_free_part(const mpz_class& m)
{
    if (m == 0) fail(ErrorCode::InvalidArgument, "cube_free_part(0)");
    mpz_class r = m < 0 ? -1 : 1;
    for (auto& [q, e] : factor_integer(m)) {
        for (unsigned i = 0; i < e % 3; ++i) r *= q;
    }
    return r;
}

bool is_perfect_cube(const mpz_class& m)
{
    mpz_class r;
    return mpz_root(r.get_mpz_t(), m.get_mpz_t(), 3) != 0;
}

mpz_class round_div(const mpz_class& n, const mpz_class& d)
{
    if (d == 0) fail(ErrorCode::DivisionByZero, "round_div by zero");
    mpz_class num = n, den = d;
    if (den < 0) { num = -num; den = -den; }
    // nearest; ties toward zero
    mpz_class twice = 2 * num;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), mpz_class(twice + den).get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    mpz_class rem2 = twice - q * 2 * den; // 2n - 2qd, in [-d, d)
    // exact tie n/d = q - 1/2: floor picked q, toward zero wants q - 1 when q > 0
    if (rem2 == -den && q > 0) q -= 1;
    return q;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m)
{
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class from_string(const std::string& s)
{
    mpz_class r;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty() || r.set_str(t, 10) != 0) fail(ErrorCode::Parse, "not an integer: " + s);
    return r;
}

} // namespace symsplit
