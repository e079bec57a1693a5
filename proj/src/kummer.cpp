#include "symsplit/kummer.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "symsplit/errors.hpp"
#include "symsplit/fp.hpp"
#include "symsplit/numtheory.hpp"

namespace symsplit {

Real to_real(const mpz_class& z)
{
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real to_real(const mpq_class& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

EisensteinInt KElement::to_eisenstein() const
{
    if (!is_integral()) fail(ErrorCode::InvalidArgument, "element of K is not integral");
    return {a.get_num(), b.get_num()};
}

KElement operator*(const KElement& x, const KElement& y)
{
    mpq_class bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
}

bool operator==(const KElement& x, const KElement& y) { return x.a == y.a && x.b == y.b; }

KElement to_k(const EisensteinInt& z) { return {mpq_class(z.a), mpq_class(z.b)}; }

namespace {

// ---- power-basis arithmetic; index 3 i + j holds the coefficient of w^i c^j

template <class T>
std::array<T, 3> cubic_mul(const T* u, const T* v, const mpz_class& m)
{
    std::array<T, 3> r{T(0), T(0), T(0)};
    for (int i = 0; i < 3; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < 3; ++j) {
            if (v[j] == 0) continue;
            T t = u[i] * v[j];
            if (i + j < 3) r[i + j] += t;
            else r[i + j - 3] += t * m;
        }
    }
    return r;
}

template <class T>
std::vector<T> pb_mul(const std::vector<T>& x, const std::vector<T>& y, const mpz_class& m)
{
    auto a = cubic_mul(x.data(), y.data(), m);
    auto d = cubic_mul(x.data() + 3, y.data() + 3, m);
    auto b = cubic_mul(x.data(), y.data() + 3, m);
    auto c = cubic_mul(x.data() + 3, y.data(), m);
    std::vector<T> r(6);
    for (int k = 0; k < 3; ++k) {
        r[k] = a[k] - d[k];
        r[3 + k] = b[k] + c[k] - d[k];
    }
    return r;
}

template <class T>
std::vector<T> pb_sigma(const std::vector<T>& x)
{
    std::vector<T> r(6);
    for (int j = 0; j < 3; ++j) {
        T a = x[j], b = x[3 + j];
        for (int t = 0; t < j; ++t) { // multiply by w
            T na = -b;
            T nb = a - b;
            a = na;
            b = nb;
        }
        r[j] = a;
        r[3 + j] = b;
    }
    return r;
}

QVec qvec(const ZVec& v)
{
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

bool integral(const QVec& v)
{
    for (auto& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

ZVec to_z(const QVec& v)
{
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].get_den() != 1) fail(ErrorCode::InvalidArgument, "non-integral coordinates");
        r[i] = v[i].get_num();
    }
    return r;
}

// Lower-triangular HNF of the Z-module spanned by rational rows.
QMat normalize_basis(const QMat& rows)
{
    mpz_class d = 1;
    for (auto& r : rows)
        for (auto& x : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    ZMat Z;
    for (auto& r : rows) {
        ZVec v;
        for (auto it = r.rbegin(); it != r.rend(); ++it) v.push_back(mpz_class((*it) * d));
        Z.push_back(v);
    }
    ZMat H = hnf(Z);
    SYMSPLIT_CHECK(H.size() == 6, "basis has full rank");
    QMat out(6, QVec(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) out[5 - i][5 - j] = mpq_class(H[i][j], d);
    for (auto& r : out)
        for (auto& x : r) x.canonicalize();
    return out;
}

std::vector<std::vector<ZVec>> compute_table(const QMat& basis, const QMat& inv, const mpz_class& m)
{
    std::vector<std::vector<ZVec>> T(6, std::vector<ZVec>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = i; j < 6; ++j) {
            QVec prod = pb_mul(basis[i], basis[j], m);
            QVec c = mul(prod, inv);
            SYMSPLIT_CHECK(integral(c), "order is closed under multiplication");
            T[i][j] = T[j][i] = to_z(c);
        }
    return T;
}

// ---- F_p helpers on vectors of length 6

using FVec = std::vector<u64>;

FVec mod_p(const ZVec& v, u64 p)
{
    FVec r(v.size());
    mpz_class P((unsigned long)p);
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = mod_floor(v[i], P).get_ui();
    return r;
}

struct TableModP {
    u64 p;
    std::vector<std::vector<FVec>> t;
    TableModP(const std::vector<std::vector<ZVec>>& T, u64 p_) : p(p_), t(6, std::vector<FVec>(6))
    {
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) t[i][j] = mod_p(T[i][j], p);
    }
    FVec mul(const FVec& x, const FVec& y) const
    {
        FVec r(6, 0);
        for (int i = 0; i < 6; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < 6; ++j) {
                if (!y[j]) continue;
                u64 c = mulmod(x[i], y[j], p);
                for (int k = 0; k < 6; ++k) r[k] = (r[k] + mulmod(c, t[i][j][k], p)) % p;
            }
        }
        return r;
    }
    FVec pow(FVec x, mpz_class e) const
    {
        FVec r(6, 0);
        r[0] = 1 % p; // omega_0 = 1
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = mul(r, r);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, x);
        }
        return r;
    }
    FVec basis(int i) const
    {
        FVec v(6, 0);
        v[i] = 1;
        return v;
    }
};

// Kernel of x -> x^(p^k) on O/pO, p^k >= 6: the p-radical.
fp::Matrix radical_mod_p(const TableModP& T)
{
    u64 p = T.p;
    mpz_class q = p;
    while (q < 6) q *= p;
    fp::Matrix F;
    for (int i = 0; i < 6; ++i) F.push_back(T.pow(T.basis(i), q));
    return fp::kernel(fp::transpose(F), p);
}

ZMat lift_with_p(const fp::Matrix& rows)
{
    ZMat g;
    for (auto& r : rows) {
        ZVec v;
        for (auto x : r) v.push_back(mpz_class((unsigned long)x));
        g.push_back(v);
    }
    return g;
}

// One round-2 step at p; returns nullopt when the order is p-maximal.
std::optional<QMat> round2_step(const QMat& basis, const std::vector<std::vector<ZVec>>& T, u64 p)
{
    TableModP Tp(T, p);
    fp::Matrix R = radical_mod_p(Tp);
    if (R.empty()) return std::nullopt;
    ZMat Ib = hnf_mod(lift_with_p(R), mpz_class((unsigned long)p), 6);
    QMat Ib_inv = inverse(to_q(Ib));
    // x -> (y -> x y) on I_p / p I_p
    fp::Matrix M(6, FVec());
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            ZVec prod(6, 0);
            for (int a = 0; a < 6; ++a) {
                if (Ib[j][a] == 0) continue;
                for (int k = 0; k < 6; ++k) prod[k] += Ib[j][a] * T[i][a][k];
            }
            QVec c = mul(qvec(prod), Ib_inv);
            SYMSPLIT_CHECK(integral(c), "radical is an ideal");
            FVec cm = mod_p(to_z(c), p);
            M[i].insert(M[i].end(), cm.begin(), cm.end());
        }
    }
    fp::Matrix K = fp::kernel(fp::transpose(M), p);
    if (K.empty()) return std::nullopt;
    ZMat U = hnf_mod(lift_with_p(K), mpz_class((unsigned long)p), 6);
    QMat nb;
    for (auto& u : U) {
        QVec e(6, 0);
        for (int a = 0; a < 6; ++a)
            for (int k = 0; k < 6; ++k) e[k] += mpq_class(u[a], (unsigned long)p) * basis[a][k];
        nb.push_back(e);
    }
    return normalize_basis(nb);
}

ZVec minimal_polynomial_closed_form(const mpz_class& m)
{
    // Res_x(x^2+x+1, (y-x)^3 - m) = (y^2+y+1)^3 - m (2y^3+3y^2-3y-2) + m^2
    ZVec a{1, 3, 6, 7, 6, 3, 1};
    a[0] += 2 * m + m * m;
    a[1] += 3 * m;
    a[2] -= 3 * m;
    a[3] -= 2 * m;
    return a;
}

// Frobenius cycle types of an S3 polynomial: seeing both 2+2+2 and 3+3
// proves irreducibility.
bool irreducible_by_patterns(const ZVec& f)
{
    bool saw2 = false, saw3 = false;
    for (u64 p : primes_up_to(2000)) {
        fp::Poly g = mod_p(f, p);
        fp::trim(g);
        if (fp::degree(g) != 6) continue;
        fp::Poly d(g.size() - 1);
        for (std::size_t i = 1; i < g.size(); ++i) d[i - 1] = mulmod(g[i], i % p, p);
        fp::trim(d);
        if (fp::degree(fp::gcd(g, d, p)) != 0) continue;
        fp::Poly x{0, 1}, xp = x;
        std::vector<int> deg(4, 0);
        for (int k = 1; k <= 3; ++k) {
            xp = fp::powmod(xp, mpz_class((unsigned long)p), g, p);
            deg[k] = fp::degree(fp::gcd(g, fp::sub(xp, x, p), p));
        }
        if (deg[1] == 0 && deg[2] == 6) saw2 = true;
        if (deg[1] == 0 && deg[2] == 0 && deg[3] == 6) saw3 = true;
        if (saw2 && saw3) return true;
    }
    return false;
}

} // namespace

OrderPtr NumberFieldOrder::build(const mpz_class& m, unsigned digits)
{
    if (m == 0 || m == 1 || m == -1) fail(ErrorCode::InvalidArgument, "m must not be 0 or +-1");
    if (!is_cube_free(m)) fail(ErrorCode::NotCubeFree, m.get_str() + " is not cube-free");
    std::shared_ptr<NumberFieldOrder> O(new NumberFieldOrder());
    O->m_ = m;
    O->poly_ = minimal_polynomial_closed_form(m);
    // w + c must be a root
    {
        QVec theta(6, 0), acc(6, 0), pw(6, 0);
        theta[0] = 0;
        theta[1] = 1;
        theta[3] = 1;
        pw[0] = 1;
        for (int k = 0; k <= 6; ++k) {
            for (int i = 0; i < 6; ++i) acc[i] += mpq_class(O->poly_[k]) * pw[i];
            pw = pb_mul(pw, theta, m);
        }
        for (auto& x : acc) SYMSPLIT_CHECK(x == 0, "w + c is a root of the defining polynomial");
        SYMSPLIT_CHECK(irreducible_by_patterns(O->poly_), "defining polynomial irreducible");
    }
    QMat basis(6, QVec(6, 0));
    for (int i = 0; i < 6; ++i) basis[i][i] = 1;
    std::vector<mpz_class> ps{3};
    for (auto& [q, e] : factor_integer(m)) {
        (void)e;
        if (q != 3) ps.push_back(q);
    }
    std::sort(ps.begin(), ps.end());
    for (auto& q : ps) {
        if (!q.fits_ulong_p() || q > mpz_class("4611686018427387903"))
            fail(ErrorCode::UnsupportedPrime, "prime factor of m too large");
        for (;;) {
            QMat inv = inverse(basis);
            auto T = compute_table(basis, inv, m);
            auto nb = round2_step(basis, T, q.get_ui());
            if (!nb) break;
            basis = *nb;
        }
        O->max_primes_.push_back(q);
    }
    O->basis_q_ = basis;
    O->basis_inv_ = inverse(basis);
    mpz_class d = 1;
    for (auto& r : basis)
        for (auto& x : r) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    O->basis_den_ = d;
    O->basis_num_ = zmat(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) O->basis_num_[i][j] = mpz_class(basis[i][j] * d);
    O->finish(digits);
    return O;
}

void NumberFieldOrder::finish(unsigned digits)
{
    table_ = compute_table(basis_q_, basis_inv_, m_);
    sigma_ = zmat(6, 6);
    trace_ = ZVec(6);
    for (int i = 0; i < 6; ++i) {
        QVec s = symsplit::mul(pb_sigma(basis_q_[i]), basis_inv_);
        SYMSPLIT_CHECK(integral(s), "sigma preserves O_L");
        sigma_[i] = to_z(s);
        mpq_class tr = 6 * basis_q_[i][0] - 3 * basis_q_[i][3];
        SYMSPLIT_CHECK(tr.get_den() == 1, "integral trace");
        trace_[i] = tr.get_num();
    }
    ZMat G = zmat(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) G[i][j] += table_[i][j][k] * trace_[k];
    disc_ = det(G);
    mpz_class dn = det(basis_num_);
    mpz_class d6;
    mpz_pow_ui(d6.get_mpz_t(), basis_den_.get_mpz_t(), 6);
    index_ = d6 / abs(dn);
    SYMSPLIT_CHECK(index_ * abs(dn) == d6, "index is an integer");
    SYMSPLIT_CHECK(basis_q_[0][0] == 1, "omega_0 = 1");
    for (int k = 1; k < 6; ++k) SYMSPLIT_CHECK(basis_q_[0][k] == 0, "omega_0 = 1");

    digits_ = digits;
    Real::default_precision(digits);
    Real rho = boost::multiprecision::cbrt(to_real(m_));
    Real half = Real(1) / 2;
    Real s3 = boost::multiprecision::sqrt(Real(3)) / 2;
    Complex zeta{-half, s3};
    auto cmul = [](const Complex& x, const Complex& y) {
        return Complex{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    };
    for (int k = 0; k < 3; ++k) {
        Complex ck{rho, Real(0)};
        for (int t = 0; t < k; ++t) ck = cmul(ck, zeta);
        std::array<Complex, 6> ev;
        Complex cj{Real(1), Real(0)};
        for (int j = 0; j < 3; ++j) {
            ev[j] = cj;
            ev[3 + j] = cmul(zeta, cj);
            cj = cmul(cj, ck);
        }
        for (int i = 0; i < 6; ++i) {
            Complex s{Real(0), Real(0)};
            for (int j = 0; j < 6; ++j) {
                if (basis_q_[i][j] == 0) continue;
                Real c = to_real(basis_q_[i][j]);
                s.re += c * ev[j].re;
                s.im += c * ev[j].im;
            }
            emb_[k][i] = s;
            emb_d_[k][i] = {s.re.convert_to<double>(), s.im.convert_to<double>()};
        }
    }
}

ZVec NumberFieldOrder::mul(const ZVec& x, const ZVec& y) const
{
    ZVec r(6, 0);
    mpz_class c;
    for (int i = 0; i < 6; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < 6; ++j) {
            if (y[j] == 0) continue;
            c = x[i] * y[j];
            const ZVec& t = table_[i][j];
            for (int k = 0; k < 6; ++k)
                if (t[k] != 0) r[k] += c * t[k];
        }
    }
    return r;
}

QVec NumberFieldOrder::mul(const QVec& x, const QVec& y) const
{
    QVec r(6, 0);
    for (int i = 0; i < 6; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < 6; ++j) {
            if (y[j] == 0) continue;
            mpq_class c = x[i] * y[j];
            for (int k = 0; k < 6; ++k)
                if (table_[i][j][k] != 0) r[k] += c * table_[i][j][k];
        }
    }
    return r;
}

ZMat NumberFieldOrder::mult_matrix(const ZVec& x) const
{
    ZMat M = zmat(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (x[j] == 0) continue;
            for (int k = 0; k < 6; ++k) M[i][k] += x[j] * table_[i][j][k];
        }
    return M;
}

ZVec NumberFieldOrder::sigma(const ZVec& x) const { return symsplit::mul(x, sigma_); }

QVec NumberFieldOrder::sigma(const QVec& x) const
{
    QVec r(6, 0);
    for (int i = 0; i < 6; ++i) {
        if (x[i] == 0) continue;
        for (int k = 0; k < 6; ++k) r[k] += x[i] * sigma_[i][k];
    }
    return r;
}

mpz_class NumberFieldOrder::trace(const ZVec& x) const
{
    mpz_class t = 0;
    for (int i = 0; i < 6; ++i) t += x[i] * trace_[i];
    return t;
}

QVec NumberFieldOrder::to_power_basis(const QVec& x) const { return symsplit::mul(x, basis_q_); }
QVec NumberFieldOrder::from_power_basis(const QVec& e) const { return symsplit::mul(e, basis_inv_); }

ZVec NumberFieldOrder::one() const
{
    ZVec v(6, 0);
    v[0] = 1;
    return v;
}

ZVec NumberFieldOrder::from_int(const mpz_class& a) const
{
    ZVec v(6, 0);
    v[0] = a;
    return v;
}

ZVec NumberFieldOrder::from_eisenstein(const EisensteinInt& z) const
{
    QVec e(6, 0);
    e[0] = z.a;
    e[3] = z.b;
    return to_z(from_power_basis(e));
}

ZVec NumberFieldOrder::cube_root() const
{
    QVec e(6, 0);
    e[1] = 1;
    return to_z(from_power_basis(e));
}

ZVec NumberFieldOrder::eps() const
{
    QVec e(6, 0);
    e[3] = 1;
    return to_z(from_power_basis(e));
}

KElement NumberFieldOrder::relative_norm(const QVec& x) const
{
    QVec e = to_power_basis(x);
    QVec s1 = pb_sigma(e);
    QVec s2 = pb_sigma(s1);
    QVec r = pb_mul(pb_mul(e, s1, m_), s2, m_);
    SYMSPLIT_CHECK(r[1] == 0 && r[2] == 0 && r[4] == 0 && r[5] == 0, "relative norm lies in K");
    return {r[0], r[3]};
}

mpq_class NumberFieldOrder::norm(const QVec& x) const { return relative_norm(x).norm(); }

mpz_class NumberFieldOrder::norm(const ZVec& x) const
{
    // scale to integer power-basis coordinates to stay in mpz
    ZVec e(6, 0);
    for (int i = 0; i < 6; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < 6; ++j) e[j] += x[i] * basis_num_[i][j];
    }
    ZVec s1 = pb_sigma(e);
    ZVec s2 = pb_sigma(s1);
    ZVec r = pb_mul(pb_mul(e, s1, m_), s2, m_);
    mpz_class n = r[0] * r[0] - r[0] * r[3] + r[3] * r[3];
    mpz_class d6;
    mpz_pow_ui(d6.get_mpz_t(), basis_den_.get_mpz_t(), 6);
    SYMSPLIT_CHECK(mpz_divisible_p(n.get_mpz_t(), d6.get_mpz_t()), "norm of an integral element is an integer");
    return n / d6;
}

mpz_class NumberFieldOrder::norm_by_determinant(const ZVec& x) const { return det(mult_matrix(x)); }

Complex NumberFieldOrder::embed(std::size_t k, const QVec& x) const
{
    Real::default_precision(digits_);
    Complex s{Real(0), Real(0)};
    for (int i = 0; i < 6; ++i) {
        if (x[i] == 0) continue;
        Real c = to_real(x[i]);
        s.re += c * emb_[k][i].re;
        s.im += c * emb_[k][i].im;
    }
    return s;
}

std::string NumberFieldOrder::describe() const
{
    std::ostringstream os;
    os << "Q(w, cbrt(" << m_.get_str() << ")), disc " << disc_.get_str() << ", index " << index_.get_str();
    return os.str();
}

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(OrderPtr o, QVec coords) : o_(std::move(o)), x_(std::move(coords))
{
    if (x_.size() != 6) fail(ErrorCode::InvalidArgument, "field element needs 6 coordinates");
    for (auto& c : x_) c.canonicalize();
}

FieldElement::FieldElement(OrderPtr o, const ZVec& coords) : FieldElement(std::move(o), qvec(coords)) {}

FieldElement FieldElement::from_power_basis(OrderPtr o, const QVec& e)
{
    QVec c = o->from_power_basis(e);
    return FieldElement(std::move(o), c);
}

FieldElement FieldElement::from_k(OrderPtr o, const KElement& k)
{
    QVec e(6, 0);
    e[0] = k.a;
    e[3] = k.b;
    return from_power_basis(std::move(o), e);
}

bool FieldElement::is_integral() const { return integral(x_); }
ZVec FieldElement::integral_coords() const { return to_z(x_); }

bool FieldElement::is_zero() const
{
    for (auto& c : x_)
        if (c != 0) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& y) const
{
    QVec r(6);
    for (int i = 0; i < 6; ++i) r[i] = x_[i] + y.x_[i];
    return FieldElement(o_, r);
}

FieldElement FieldElement::operator-(const FieldElement& y) const
{
    QVec r(6);
    for (int i = 0; i < 6; ++i) r[i] = x_[i] - y.x_[i];
    return FieldElement(o_, r);
}

FieldElement FieldElement::operator*(const FieldElement& y) const { return FieldElement(o_, o_->mul(x_, y.x_)); }

FieldElement FieldElement::sigma() const { return FieldElement(o_, o_->sigma(x_)); }

KElement FieldElement::relative_norm() const { return o_->relative_norm(x_); }

mpq_class FieldElement::norm() const { return o_->norm(x_); }

FieldElement FieldElement::inverse() const
{
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    FieldElement s1 = sigma(), s2 = s1.sigma();
    KElement n = relative_norm();
    mpq_class nn = n.norm();
    KElement ninv{(n.a - n.b) / nn, -n.b / nn}; // conj / norm
    return s1 * s2 * from_k(o_, ninv);
}

FieldElement FieldElement::pow(long e) const
{
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? (unsigned long)(-e) : (unsigned long)e;
    FieldElement r(o_, qvec(o_->one()));
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------- ideals

IdealHNF unit_ideal() { return {identity(6), 1}; }

namespace {

mpz_class diag_product(const ZMat& H)
{
    mpz_class n = 1;
    for (int i = 0; i < 6; ++i) n *= H[i][i];
    return n;
}

} // namespace

IdealHNF ideal_from_generators(const NumberFieldOrder& O, const std::vector<ZVec>& gens, const mpz_class& D)
{
    std::vector<ZVec> all;
    for (auto& g : gens) {
        ZMat M = O.mult_matrix(g);
        for (auto& r : M) all.push_back(r);
    }
    IdealHNF I;
    I.H = hnf_mod(all, D, 6);
    I.norm = diag_product(I.H);
    return I;
}

IdealHNF principal_ideal(const NumberFieldOrder& O, const ZVec& x)
{
    mpz_class n = abs(O.norm(x));
    if (n == 0) fail(ErrorCode::InvalidArgument, "principal ideal of zero");
    return ideal_from_generators(O, {x}, n);
}

IdealHNF ideal_from_integer(const mpz_class& a)
{
    IdealHNF I;
    I.H = identity(6);
    for (int i = 0; i < 6; ++i) I.H[i][i] = abs(a);
    I.norm = diag_product(I.H);
    return I;
}

IdealHNF ideal_mul(const NumberFieldOrder& O, const IdealHNF& I, const IdealHNF& J)
{
    if (I.is_unit_ideal()) return J;
    if (J.is_unit_ideal()) return I;
    std::vector<ZVec> prods;
    for (auto& a : I.H)
        for (auto& b : J.H) prods.push_back(O.mul(a, b));
    IdealHNF R;
    R.H = hnf_mod(prods, I.norm * J.norm, 6);
    R.norm = diag_product(R.H);
    SYMSPLIT_CHECK(R.norm == I.norm * J.norm, "ideal norm is multiplicative");
    return R;
}

IdealHNF ideal_pow(const NumberFieldOrder& O, const IdealHNF& I, unsigned long k)
{
    IdealHNF r = unit_ideal(), b = I;
    while (k) {
        if (k & 1) r = ideal_mul(O, r, b);
        k >>= 1;
        if (k) b = ideal_mul(O, b, b);
    }
    return r;
}

IdealHNF ideal_sigma(const NumberFieldOrder& O, const IdealHNF& I)
{
    std::vector<ZVec> rows;
    for (auto& h : I.H) rows.push_back(O.sigma(h));
    IdealHNF R;
    R.H = hnf_mod(rows, I.norm, 6);
    R.norm = diag_product(R.H);
    SYMSPLIT_CHECK(R.norm == I.norm, "sigma preserves ideal norms");
    return R;
}

bool ideal_contains(const IdealHNF& I, const ZVec& x0)
{
    ZVec x = x0;
    for (int i = 0; i < 6; ++i) {
        if (x[i] == 0) continue;
        if (!mpz_divisible_p(x[i].get_mpz_t(), I.H[i][i].get_mpz_t())) return false;
        mpz_class q = x[i] / I.H[i][i];
        for (int k = i; k < 6; ++k) x[k] -= q * I.H[i][k];
    }
    return true;
}

bool ideal_contains(const IdealHNF& I, const IdealHNF& J)
{
    for (auto& r : J.H)
        if (!ideal_contains(I, r)) return false;
    return true;
}

bool ideal_is_module(const NumberFieldOrder& O, const IdealHNF& I)
{
    for (auto& h : I.H)
        for (int j = 0; j < 6; ++j) {
            ZVec w(6, 0);
            w[j] = 1;
            if (!ideal_contains(I, O.mul(h, w))) return false;
        }
    return true;
}

IdealHNF ideal_div_integer(const IdealHNF& I, const mpz_class& a)
{
    IdealHNF R = I;
    for (auto& r : R.H)
        for (auto& x : r) {
            if (!mpz_divisible_p(x.get_mpz_t(), a.get_mpz_t()))
                fail(ErrorCode::InvalidArgument, "ideal not divisible by integer");
            x /= a;
        }
    R.norm = diag_product(R.H);
    return R;
}

IdealHNF ideal_scaled_inverse(const NumberFieldOrder& O, const IdealHNF& I)
{
    const mpz_class& N = I.norm;
    if (N == 1) return unit_ideal();
    // z with z * h = 0 mod N for all h in I: N times the dual of the lattice
    // K spanned by the columns of the multiplication matrices, plus N Z^6.
    ZMat cols;
    for (auto& h : I.H) {
        ZMat M = O.mult_matrix(h);
        for (int k = 0; k < 6; ++k) {
            ZVec c(6);
            for (int i = 0; i < 6; ++i) c[i] = M[i][k];
            cols.push_back(c);
        }
    }
    ZMat C = hnf_mod(cols, N, 6);
    QMat Ci = inverse(to_q(C));
    ZMat gens = zmat(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            mpq_class v = N * Ci[j][i];
            SYMSPLIT_CHECK(v.get_den() == 1, "dual lattice scaled by N is integral");
            gens[i][j] = v.get_num();
        }
    IdealHNF R;
    R.H = hnf_mod(gens, N, 6);
    R.norm = diag_product(R.H);
    mpz_class want;
    mpz_pow_ui(want.get_mpz_t(), N.get_mpz_t(), 6);
    SYMSPLIT_CHECK(R.norm * N == want, "norm of the scaled inverse");
    return R;
}

IdealHNF ideal_times_inverse(const NumberFieldOrder& O, const ZVec& x, const IdealHNF& I)
{
    if (!ideal_contains(I, x)) fail(ErrorCode::InvalidArgument, "element not in ideal");
    IdealHNF J = ideal_mul(O, principal_ideal(O, x), ideal_scaled_inverse(O, I));
    return ideal_div_integer(J, I.norm);
}

// ---------------------------------------------------------------- primes

void complete_prime(const NumberFieldOrder& O, PrimeIdeal& P)
{
    u64 p = P.p.get_ui();
    // tau: kernel of y -> (y h_j mod p)_j
    fp::Matrix M(6, FVec());
    for (int i = 0; i < 6; ++i) {
        ZVec w(6, 0);
        w[i] = 1;
        for (auto& h : P.ideal.H) {
            FVec c = mod_p(O.mul(w, h), p);
            M[i].insert(M[i].end(), c.begin(), c.end());
        }
    }
    fp::Matrix K = fp::kernel(fp::transpose(M), p);
    SYMSPLIT_CHECK(!K.empty(), "p P^-1 is larger than p O_L");
    ZVec tau;
    for (auto x : K[0]) tau.push_back(mpz_class((unsigned long)x));
    P.tau_matrix = O.mult_matrix(tau);
    P.e = valuation(O, P, O.from_int(P.p));
    mpz_class n = P.ideal.norm;
    unsigned f = 0;
    while (n > 1) {
        SYMSPLIT_CHECK(mpz_divisible_p(n.get_mpz_t(), P.p.get_mpz_t()), "prime norm is a power of p");
        n /= P.p;
        ++f;
    }
    P.f = f;
}

unsigned valuation(const NumberFieldOrder& O, const PrimeIdeal& P, ZVec x)
{
    (void)O;
    bool zero = std::all_of(x.begin(), x.end(), [](const mpz_class& c) { return c == 0; });
    if (zero) fail(ErrorCode::InvalidArgument, "valuation of zero");
    unsigned v = 0;
    for (;;) {
        ZVec y = symsplit::mul(x, P.tau_matrix);
        for (auto& c : y)
            if (!mpz_divisible_p(c.get_mpz_t(), P.p.get_mpz_t())) return v;
        for (auto& c : y) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), P.p.get_mpz_t());
        x = std::move(y);
        ++v;
    }
}

unsigned valuation(const NumberFieldOrder& O, const PrimeIdeal& P, const IdealHNF& I)
{
    unsigned v = ~0u;
    for (auto& h : I.H) {
        bool zero = std::all_of(h.begin(), h.end(), [](const mpz_class& c) { return c == 0; });
        if (zero) continue;
        v = std::min(v, valuation(O, P, h));
    }
    return v;
}

namespace {

ZVec c_minus(const NumberFieldOrder& O, const EisensteinInt& r)
{
    ZVec c = O.cube_root();
    ZVec rr = O.from_eisenstein(r);
    for (int i = 0; i < 6; ++i) c[i] -= rr[i];
    return c;
}

IdealHNF two_gen(const NumberFieldOrder& O, const mpz_class& p, const ZVec& g)
{
    return ideal_from_generators(O, {O.from_int(p), g}, p);
}

PrimeIdeal make_prime(const NumberFieldOrder& O, const mpz_class& p, const IdealHNF& I, ZVec gen2, const EisensteinInt& below)
{
    PrimeIdeal P;
    P.p = p;
    P.ideal = I;
    P.gen2 = std::move(gen2);
    P.below = below;
    complete_prime(O, P);
    return P;
}

// Some g with (p, g) = I, searched among small combinations of the HNF rows.
ZVec find_second_generator(const NumberFieldOrder& O, const mpz_class& p, const IdealHNF& I, std::vector<ZVec> hints)
{
    for (auto& h : hints)
        if (two_gen(O, p, h) == I) return h;
    for (auto& h : I.H)
        if (two_gen(O, p, h) == I) return h;
    std::mt19937_64 rng(0x2e1 + p.get_ui());
    for (int it = 0; it < 2000; ++it) {
        ZVec g(6, 0);
        for (auto& h : I.H) {
            long c = (long)(rng() % 7) - 3;
            for (int k = 0; k < 6; ++k) g[k] += c * h[k];
        }
        if (two_gen(O, p, g) == I) return g;
    }
    fail(ErrorCode::Inconsistent, "no two-element representation found");
}

} // namespace

std::vector<PrimeIdeal> factor_prime_in_L(const NumberFieldOrder& O, const mpz_class& p)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, p.get_str() + " is not prime");
    if (mpz_divisible_p(mpz_class(3 * O.m()).get_mpz_t(), p.get_mpz_t()))
        fail(ErrorCode::UnsupportedPrime, "p divides 3m");
    if (mpz_divisible_p(O.index().get_mpz_t(), p.get_mpz_t()))
        fail(ErrorCode::UnsupportedPrime, "p divides the index");
    if (!p.fits_ulong_p() || p > mpz_class("4611686018427387903"))
        fail(ErrorCode::UnsupportedPrime, "p too large");
    u64 pp = p.get_ui();
    u64 mp = mod_floor(O.m(), p).get_ui();
    std::vector<PrimeIdeal> out;
    auto sp = factor_rational_prime(p);
    if (sp.kind == PrimeKind::Inert) {
        // unique cube root r of m in F_p; the roots in F_{p^2} are r, r w, r w^2
        u64 r = powmod(mp, (2 * pp - 1) / 3, pp);
        std::vector<EisensteinInt> roots;
        EisensteinInt t(mpz_class((unsigned long)r));
        for (int j = 0; j < 3; ++j) {
            roots.push_back({mod_floor(t.a, p), mod_floor(t.b, p)});
            t = t * EisensteinInt::w();
        }
        std::sort(roots.begin(), roots.end());
        for (auto& rt : roots) {
            ZVec g = c_minus(O, rt);
            out.push_back(make_prime(O, p, two_gen(O, p, g), g, sp.pi));
        }
        return out;
    }
    fp::Poly cube{(pp - mp) % pp, 0, 0, 1};
    fp::trim(cube);
    std::vector<u64> troots = fp::roots(cube, pp);
    for (auto& pi : {sp.pi, sp.pi_conj}) {
        ZVec piv = O.from_eisenstein(pi);
        if (troots.empty()) {
            IdealHNF I = ideal_from_generators(O, {O.from_int(p), piv}, p);
            out.push_back(make_prime(O, p, I, piv, pi));
            continue;
        }
        for (u64 t : troots) {
            ZVec g = c_minus(O, EisensteinInt(mpz_class((unsigned long)t)));
            IdealHNF I = ideal_from_generators(O, {O.from_int(p), piv, g}, p);
            std::vector<ZVec> hints;
            for (long k = 1; k <= 4; ++k) {
                ZVec h = g;
                for (int i = 0; i < 6; ++i) h[i] += k * piv[i];
                hints.push_back(h);
            }
            ZVec g2 = find_second_generator(O, p, I, hints);
            out.push_back(make_prime(O, p, I, g2, pi));
        }
    }
    return out;
}

namespace {

// Subspace of F_p^6 in reduced row echelon form.
struct Subspace {
    u64 p;
    fp::Matrix rows;
    std::vector<std::size_t> piv;

    explicit Subspace(u64 p_) : p(p_) {}

    FVec reduce(FVec v) const
    {
        for (std::size_t k = 0; k < rows.size(); ++k) {
            u64 c = v[piv[k]];
            if (!c) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + p - mulmod(c, rows[k][j], p)) % p;
        }
        return v;
    }
    bool add(FVec v)
    {
        v = reduce(std::move(v));
        std::size_t c = 0;
        while (c < v.size() && v[c] == 0) ++c;
        if (c == v.size()) return false;
        u64 inv = invmod(v[c], p);
        for (auto& x : v) x = mulmod(x, inv, p);
        for (auto& r : rows) {
            u64 f = r[c];
            if (!f) continue;
            for (std::size_t j = 0; j < r.size(); ++j) r[j] = (r[j] + p - mulmod(f, v[j], p)) % p;
        }
        rows.push_back(v);
        piv.push_back(c);
        return true;
    }
    std::size_t dim() const { return rows.size(); }
};

bool is_zero(const FVec& v)
{
    return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

void split_ideal(const TableModP& T, const Subspace& J, const fp::Matrix& S, std::vector<Subspace>& out)
{
    u64 p = T.p;
    Subspace SJ = J;
    for (auto& s : S) SJ.add(s);
    std::size_t comps = SJ.dim() - J.dim();
    if (comps == 1) {
        out.push_back(J);
        return;
    }
    SYMSPLIT_CHECK(comps > 1, "Berlekamp subalgebra has positive dimension");
    FVec one = T.basis(0);
    FVec x;
    for (auto& s : S) {
        Subspace t = J;
        t.add(one);
        if (!is_zero(t.reduce(s))) {
            x = s;
            break;
        }
    }
    SYMSPLIT_CHECK(!x.empty(), "non-constant Berlekamp element");
    // minimal polynomial of x modulo J
    std::vector<FVec> pw{J.reduce(one)};
    fp::Poly minpoly;
    for (int k = 1; k <= 6; ++k) {
        FVec next = J.reduce(T.mul(pw.back(), x));
        // solve next = sum c_i pw[i] via elimination on the column matrix
        fp::Matrix A;
        for (std::size_t j = 0; j < 6; ++j) {
            FVec row;
            for (auto& v : pw) row.push_back(v[j]);
            row.push_back((p - next[j]) % p);
            A.push_back(row);
        }
        fp::Matrix K = fp::kernel(A, p);
        bool found = false;
        for (auto& kv : K) {
            if (kv.back() == 0) continue;
            u64 inv = invmod(kv.back(), p);
            minpoly.assign(k + 1, 0);
            for (int i = 0; i < k; ++i) minpoly[i] = (p - mulmod(kv[i], inv, p)) % p;
            minpoly[k] = 1;
            found = true;
            break;
        }
        if (found) break;
        pw.push_back(next);
    }
    SYMSPLIT_CHECK(!minpoly.empty(), "minimal polynomial found");
    for (u64 t : fp::roots(minpoly, p)) {
        Subspace Jt = J;
        FVec xt = x;
        xt[0] = (xt[0] + p - t) % p;
        for (int i = 0; i < 6; ++i) Jt.add(T.mul(xt, T.basis(i)));
        split_ideal(T, Jt, S, out);
    }
}

} // namespace

std::vector<PrimeIdeal> prime_decomposition(const NumberFieldOrder& O, const mpz_class& p)
{
    if (!is_prime(p)) fail(ErrorCode::NotPrime, p.get_str() + " is not prime");
    if (!p.fits_ulong_p() || p > mpz_class("4611686018427387903"))
        fail(ErrorCode::UnsupportedPrime, "p too large");
    u64 pp = p.get_ui();
    std::vector<std::vector<ZVec>> T(6, std::vector<ZVec>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) T[i][j] = O.table(i, j);
    TableModP Tp(T, pp);
    Subspace R(pp);
    for (auto& v : radical_mod_p(Tp)) R.add(v);
    // Berlekamp subalgebra: x^p - x in the radical
    fp::Matrix Phi;
    for (int i = 0; i < 6; ++i) {
        FVec v = Tp.pow(Tp.basis(i), p);
        v[i] = (v[i] + pp - 1) % pp;
        Phi.push_back(R.reduce(v));
    }
    fp::Matrix S = fp::kernel(fp::transpose(Phi), pp);
    std::vector<Subspace> maximal;
    split_ideal(Tp, R, S, maximal);
    std::vector<PrimeIdeal> out;
    for (auto& M : maximal) {
        IdealHNF I = ideal_from_generators(O, lift_with_p(M.rows), p);
        ZVec g2 = find_second_generator(O, p, I, {});
        out.push_back(make_prime(O, p, I, g2, EisensteinInt(0)));
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f) return a.f < b.f;
        return a.ideal.H < b.ideal.H;
    });
    // record the prime of Z[w] below each P
    auto sp = factor_rational_prime(p);
    for (auto& P : out) {
        std::vector<EisensteinInt> cands{sp.pi};
        if (sp.kind == PrimeKind::Split) cands.push_back(sp.pi_conj);
        for (auto& pi : cands)
            if (ideal_contains(P.ideal, O.from_eisenstein(pi))) {
                P.below = pi;
                break;
            }
    }
    return out;
}

std::vector<PrimeIdeal> primes_above(const NumberFieldOrder& O, const mpz_class& p)
{
    bool bad = mpz_divisible_p(mpz_class(3 * O.m()).get_mpz_t(), p.get_mpz_t()) ||
               mpz_divisible_p(O.index().get_mpz_t(), p.get_mpz_t());
    return bad ? prime_decomposition(O, p) : factor_prime_in_L(O, p);
}

} // namespace symsplit
