#include "symsplit/intmat.hpp"

#include <algorithm>

#include "symsplit/errors.hpp"

namespace symsplit {

ZMat zmat(std::size_t rows, std::size_t cols) { return ZMat(rows, ZVec(cols, 0)); }

ZMat identity(std::size_t n)
{
    ZMat I = zmat(n, n);
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

ZMat mul(const ZMat& A, const ZMat& B)
{
    if (A.empty()) return {};
    std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
    ZMat C = zmat(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (A[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
        }
    return C;
}

ZVec mul(const ZVec& v, const ZMat& A)
{
    std::size_t m = A.empty() ? 0 : A[0].size();
    ZVec r(m, 0);
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) r[j] += v[t] * A[t][j];
    }
    return r;
}

QVec mul(const QVec& v, const QMat& A)
{
    std::size_t m = A.empty() ? 0 : A[0].size();
    QVec r(m, 0);
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) r[j] += v[t] * A[t][j];
    }
    return r;
}

ZMat transpose(const ZMat& A)
{
    if (A.empty()) return {};
    ZMat T = zmat(A[0].size(), A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
    return T;
}

mpz_class det(ZMat A)
{
    std::size_t n = A.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && A[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(A[k], A[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                A[i][j] = A[i][j] * A[k][k] - A[i][k] * A[k][j];
                mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = A[k][k];
    }
    return sign * A[n - 1][n - 1];
}

QMat to_q(const ZMat& A)
{
    QMat Q(A.size());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (auto& x : A[i]) Q[i].push_back(mpq_class(x));
    return Q;
}

QMat inverse(const QMat& A0)
{
    std::size_t n = A0.size();
    QMat A = A0, I(n, QVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t s = c;
        while (s < n && A[s][c] == 0) ++s;
        if (s == n) fail(ErrorCode::DivisionByZero, "inverse of singular matrix");
        std::swap(A[c], A[s]);
        std::swap(I[c], I[s]);
        mpq_class inv = 1 / A[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            A[c][j] *= inv;
            I[c][j] *= inv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0) continue;
            mpq_class f = A[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                A[r][j] -= f * A[c][j];
                I[r][j] -= f * I[c][j];
            }
        }
    }
    return I;
}

namespace {

void reduce_mod(ZVec& v, const mpz_class& D, std::size_t from)
{
    for (std::size_t k = from; k < v.size(); ++k) mpz_fdiv_r(v[k].get_mpz_t(), v[k].get_mpz_t(), D.get_mpz_t());
}

// Replace (x, y) by (u x + v y, (a/g) y - (b/g) x) where a = x[c], b = y[c].
void combine(ZVec& x, ZVec& y, std::size_t c, ZVec* ux = nullptr, ZVec* uy = nullptr)
{
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x[c].get_mpz_t(), y[c].get_mpz_t());
    mpz_class a = x[c] / g, b = y[c] / g;
    auto apply = [&](ZVec& X, ZVec& Y) {
        for (std::size_t k = 0; k < X.size(); ++k) {
            mpz_class nx = s * X[k] + t * Y[k];
            mpz_class ny = a * Y[k] - b * X[k];
            X[k] = nx;
            Y[k] = ny;
        }
    };
    apply(x, y);
    if (ux) apply(*ux, *uy);
}

} // namespace

ZMat hnf_mod(const ZMat& gens, const mpz_class& D0, std::size_t n)
{
    mpz_class D = abs(D0);
    if (D == 0) fail(ErrorCode::InvalidArgument, "hnf_mod with D = 0");
    std::vector<ZVec> work;
    for (auto& g : gens) {
        ZVec v = g;
        reduce_mod(v, D, 0);
        if (std::any_of(v.begin(), v.end(), [](const mpz_class& x) { return x != 0; })) work.push_back(v);
    }
    ZMat H = zmat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        ZVec piv(n, 0);
        piv[j] = D;
        for (auto& w : work) {
            if (w[j] == 0) continue;
            combine(piv, w, j);
            reduce_mod(w, D, j + 1);
            reduce_mod(piv, D, j + 1);
        }
        if (piv[j] < 0)
            for (auto& x : piv) x = -x;
        reduce_mod(piv, D, j + 1);
        H[j] = piv;
        work.erase(std::remove_if(work.begin(), work.end(),
                                  [](const ZVec& v) {
                                      return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
                                  }),
                   work.end());
    }
    // reduce above the diagonal
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), H[i][j].get_mpz_t(), H[j][j].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t k = j; k < n; ++k) H[i][k] -= q * H[j][k];
        }
    return H;
}

HnfResult hnf_with_transform(const ZMat& A)
{
    HnfResult R;
    std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    R.H = A;
    R.U = identity(rows);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (R.H[i][c] == 0) continue;
            if (R.H[r][c] == 0) {
                std::swap(R.H[r], R.H[i]);
                std::swap(R.U[r], R.U[i]);
                continue;
            }
            combine(R.H[r], R.H[i], c, &R.U[r], &R.U[i]);
        }
        if (R.H[r][c] == 0) continue;
        if (R.H[r][c] < 0) {
            for (auto& x : R.H[r]) x = -x;
            for (auto& x : R.U[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), R.H[i][c].get_mpz_t(), R.H[r][c].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t k = 0; k < cols; ++k) R.H[i][k] -= q * R.H[r][k];
            for (std::size_t k = 0; k < rows; ++k) R.U[i][k] -= q * R.U[r][k];
        }
        R.pivots.push_back(c);
        ++r;
    }
    R.rank = r;
    return R;
}

ZMat hnf(const ZMat& A)
{
    auto R = hnf_with_transform(A);
    R.H.resize(R.rank);
    return R.H;
}

std::optional<ZVec> solve_left(const ZMat& A, const ZVec& b)
{
    auto R = hnf_with_transform(A);
    ZVec res = b;
    ZVec y(A.size(), 0);
    for (std::size_t i = 0; i < R.rank; ++i) {
        std::size_t c = R.pivots[i];
        if (!mpz_divisible_p(res[c].get_mpz_t(), R.H[i][c].get_mpz_t())) return std::nullopt;
        y[i] = res[c] / R.H[i][c];
        if (y[i] == 0) continue;
        for (std::size_t k = 0; k < res.size(); ++k) res[k] -= y[i] * R.H[i][k];
    }
    for (auto& x : res)
        if (x != 0) return std::nullopt;
    return mul(y, R.U);
}

ZMat left_kernel(const ZMat& A)
{
    auto R = hnf_with_transform(A);
    ZMat K;
    for (std::size_t i = R.rank; i < A.size(); ++i) K.push_back(R.U[i]);
    return K;
}

SnfResult snf(const ZMat& A0)
{
    std::size_t n = A0.size(), m = n ? A0[0].size() : 0;
    ZMat A = A0;
    ZMat U = identity(n), V = identity(m);
    auto row_op = [&](std::size_t dst, std::size_t src, const mpz_class& q) { // row dst -= q row src
        for (std::size_t k = 0; k < m; ++k) A[dst][k] -= q * A[src][k];
        for (std::size_t k = 0; k < n; ++k) U[dst][k] -= q * U[src][k];
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const mpz_class& q) { // col dst -= q col src
        for (std::size_t k = 0; k < n; ++k) A[k][dst] -= q * A[k][src];
        for (std::size_t k = 0; k < m; ++k) V[k][dst] -= q * V[k][src];
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(A[i], A[j]);
        std::swap(U[i], U[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : A) std::swap(row[i], row[j]);
        for (auto& row : V) std::swap(row[i], row[j]);
    };
    std::size_t t = 0;
    for (; t < std::min(n, m); ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block
            std::size_t bi = n, bj = m;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < m; ++j)
                    if (A[i][j] != 0 && (bi == n || abs(A[i][j]) < abs(A[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) goto done;
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (A[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
                row_op(i, t, q);
                if (A[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                if (A[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
                col_op(j, t, q);
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility of the rest of the block by the pivot
            std::size_t bad = n;
            for (std::size_t i = t + 1; i < n && bad == n; ++i)
                for (std::size_t j = t + 1; j < m; ++j)
                    if (!mpz_divisible_p(A[i][j].get_mpz_t(), A[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == n) break;
            row_op(t, bad, -1);
        }
        if (A[t][t] < 0) {
            for (auto& x : A[t]) x = -x;
            for (auto& x : U[t]) x = -x;
        }
    }
done:
    SnfResult R;
    for (std::size_t i = 0; i < std::min(n, m); ++i) R.diag.push_back(A[i][i]);
    R.U = std::move(U);
    R.V = std::move(V);
    return R;
}

} // namespace symsplit
