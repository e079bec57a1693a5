#include "symsplit/fp.hpp"

#include <algorithm>
#include <random>

#include "symsplit/errors.hpp"

namespace symsplit::fp {

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return (int)f.size() - 1; }

Poly add(const Poly& f, const Poly& g, u64 p)
{
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
        r[i] = (a + b) % p;
    }
    trim(r);
    return r;
}

Poly sub(const Poly& f, const Poly& g, u64 p)
{
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
        r[i] = (a + p - b) % p;
    }
    trim(r);
    return r;
}

Poly mul(const Poly& f, const Poly& g, u64 p)
{
    if (f.empty() || g.empty()) return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] = (r[i + j] + symsplit::mulmod(f[i], g[j], p)) % p;
    trim(r);
    return r;
}

Poly scale(const Poly& f, u64 c, u64 p)
{
    Poly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = symsplit::mulmod(f[i], c, p);
    trim(r);
    return r;
}

void divmod(const Poly& f, const Poly& g, u64 p, Poly& q, Poly& r)
{
    if (g.empty()) fail(ErrorCode::DivisionByZero, "fp::divmod by zero polynomial");
    r = f;
    trim(r);
    q.clear();
    if (r.size() < g.size()) return;
    q.assign(r.size() - g.size() + 1, 0);
    u64 inv = invmod(g.back(), p);
    for (int i = (int)r.size() - 1; i >= (int)g.size() - 1; --i) {
        u64 c = symsplit::mulmod(r[i], inv, p);
        if (c == 0) continue;
        std::size_t shift = i - (g.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < g.size(); ++j)
            r[shift + j] = (r[shift + j] + p - symsplit::mulmod(c, g[j], p)) % p;
    }
    trim(q);
    trim(r);
}

Poly mod(const Poly& f, const Poly& g, u64 p)
{
    Poly q, r;
    divmod(f, g, p, q, r);
    return r;
}

Poly monic(const Poly& f, u64 p)
{
    if (f.empty()) return f;
    return scale(f, invmod(f.back(), p), p);
}

Poly gcd(Poly f, Poly g, u64 p)
{
    trim(f);
    trim(g);
    while (!g.empty()) {
        Poly r = mod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    return monic(f, p);
}

Poly mulmod(const Poly& f, const Poly& g, const Poly& m, u64 p)
{
    return mod(mul(f, g, p), m, p);
}

Poly powmod(const Poly& f, const mpz_class& e, const Poly& m, u64 p)
{
    Poly result{1 % p};
    trim(result);
    result = mod(result, m, p);
    Poly base = mod(f, m, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mulmod(result, result, m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m, p);
    }
    return result;
}

u64 eval(const Poly& f, u64 x, u64 p)
{
    u64 r = 0;
    for (std::size_t i = f.size(); i-- > 0;) r = (symsplit::mulmod(r, x, p) + f[i]) % p;
    return r;
}

namespace {

// Split a product of distinct linear factors into its roots.
void split_linear(const Poly& g, u64 p, std::mt19937_64& rng, std::vector<u64>& out)
{
    int d = degree(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back((p - symsplit::mulmod(g[0], invmod(g[1], p), p)) % p);
        return;
    }
    mpz_class half = mpz_class((unsigned long)(p - 1)) / 2;
    for (;;) {
        Poly h{rng() % p, 1};
        Poly t = powmod(h, half, g, p);
        t = sub(t, Poly{1}, p);
        Poly a = gcd(g, t, p);
        if (degree(a) > 0 && degree(a) < d) {
            Poly q, r;
            divmod(g, a, p, q, r);
            split_linear(a, p, rng, out);
            split_linear(monic(q, p), p, rng, out);
            return;
        }
    }
}

Poly x_power_p(const Poly& m, u64 p, unsigned times)
{
    Poly x{0, 1};
    Poly r = mod(x, m, p);
    for (unsigned i = 0; i < times; ++i) r = powmod(r, mpz_class((unsigned long)p), m, p);
    return r;
}

} // namespace

std::vector<u64> roots(const Poly& f0, u64 p)
{
    Poly f = f0;
    trim(f);
    if (f.empty()) fail(ErrorCode::InvalidArgument, "roots of zero polynomial");
    std::vector<u64> out;
    if (degree(f) == 0) return out;
    if (p < 64) {
        for (u64 x = 0; x < p; ++x)
            if (eval(f, x, p) == 0) out.push_back(x);
        return out;
    }
    f = monic(f, p);
    Poly xp = x_power_p(f, p, 1);
    Poly g = gcd(f, sub(xp, Poly{0, 1}, p), p);
    std::mt19937_64 rng(0x5eed + p);
    split_linear(g, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_irreducible(const Poly& f0, u64 p)
{
    Poly f = monic(f0, p);
    int n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly x{0, 1};
    if (x_power_p(f, p, n) != mod(x, f, p)) return false;
    for (auto& [q, e] : factor_integer(mpz_class(n))) {
        (void)e;
        unsigned k = n / q.get_ui();
        Poly t = sub(x_power_p(f, p, k), x, p);
        if (degree(gcd(f, t, p)) != 0) return false;
    }
    return true;
}

namespace {

void edf_rec(const Poly& g, int d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out)
{
    int n = degree(g);
    if (n <= d) {
        if (n == d) out.push_back(g);
        return;
    }
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
    for (;;) {
        Poly h(n);
        for (auto& c : h) c = rng() % p;
        trim(h);
        if (degree(h) <= 0) continue;
        Poly t;
        if (p == 2) {
            // trace map h + h^2 + ... + h^(2^(d-1))
            Poly s = h, acc = h;
            for (int i = 1; i < d; ++i) {
                s = mulmod(s, s, g, p);
                acc = add(acc, s, p);
            }
            t = acc;
        } else {
            t = sub(powmod(h, (pd - 1) / 2, g, p), Poly{1}, p);
        }
        Poly a = gcd(g, t, p);
        if (degree(a) > 0 && degree(a) < n) {
            Poly q, r;
            divmod(g, a, p, q, r);
            edf_rec(a, d, p, rng, out);
            edf_rec(monic(q, p), d, p, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<Poly> equal_degree_factor(const Poly& f, int d, u64 p)
{
    std::vector<Poly> out;
    std::mt19937_64 rng(0xedf + p);
    edf_rec(monic(f, p), d, p, rng, out);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& A, u64 p)
{
    std::vector<std::size_t> piv;
    std::size_t rows = A.size(), cols = rows ? A[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && A[sel][c] % p == 0) ++sel;
        if (sel == rows) continue;
        std::swap(A[r], A[sel]);
        u64 inv = invmod(A[r][c] % p, p);
        for (auto& v : A[r]) v = symsplit::mulmod(v % p, inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] % p == 0) continue;
            u64 f = A[i][c] % p;
            for (std::size_t j = 0; j < cols; ++j)
                A[i][j] = (A[i][j] % p + p - symsplit::mulmod(f, A[r][j], p)) % p;
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

} // namespace

Matrix kernel(Matrix A, u64 p)
{
    std::size_t cols = A.empty() ? 0 : A[0].size();
    auto piv = rref(A, p);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    Matrix out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<u64> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - A[i][free] % p) % p;
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t rank(Matrix A, u64 p) { return rref(A, p).size(); }

Matrix transpose(const Matrix& A)
{
    if (A.empty()) return {};
    Matrix T(A[0].size(), std::vector<u64>(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
    return T;
}

} // namespace symsplit::fp
