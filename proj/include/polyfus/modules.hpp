#pragma once

// The homogeneous-form modules and their twisted actions.
//
// V_n is the space of homogeneous degree-n forms in x, y over K = GF(p^m),
// stored as coefficient row vectors indexed by the y-exponent: coordinate i
// holds the coefficient of x^(n-i) y^i.  A 2x2 matrix M = [[a,b],[c,d]] acts
// by the substitution x -> ax + by, y -> cx + dy; rho_vn(M) is the matrix of
// that substitution on row vectors (row i is the image of x^(n-i) y^i), so
// v |-> v * rho_vn(M) and rho_vn(M1 M2) = rho_vn(M1) rho_vn(M2).
//
// Lambda is the contragredient partner of V_p on the same index set
// (coordinate i against x^(p-i) y^i): matrices act through the inverse
// transpose of the degree-p substitution and scalars act by their inverses,
// so the coordinatewise pairing V_p x Lambda -> K is invariant up to the
// Frobenius twist.  Full tuples (e, theta, M) act Frobenius-first.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polyfus/field.hpp"

namespace polyfus {

using vec = std::vector<fel>;
using MatN = std::vector<vec>;

struct Mat2 {
    fel a, b, c, d;  // [[a, b], [c, d]]
    bool operator==(const Mat2&) const = default;
};

inline Mat2 mat2_identity(const Field& F) { return {F.one(), F.zero(), F.zero(), F.one()}; }

inline fel mat2_det(const Field& F, const Mat2& M) {
    return F.sub(F.mul(M.a, M.d), F.mul(M.b, M.c));
}

inline Mat2 mat2_mul(const Field& F, const Mat2& L, const Mat2& R) {
    return {F.add(F.mul(L.a, R.a), F.mul(L.b, R.c)),
            F.add(F.mul(L.a, R.b), F.mul(L.b, R.d)),
            F.add(F.mul(L.c, R.a), F.mul(L.d, R.c)),
            F.add(F.mul(L.c, R.b), F.mul(L.d, R.d))};
}

inline Mat2 mat2_inv(const Field& F, const Mat2& M) {
    fel det = mat2_det(F, M);
    if (det == F.zero()) throw std::domain_error("singular 2x2 matrix");
    fel di = F.inv(det);
    return {F.mul(di, M.d), F.mul(di, F.neg(M.b)),
            F.mul(di, F.neg(M.c)), F.mul(di, M.a)};
}

inline Mat2 mat2_frob(const Field& F, const Mat2& M, std::uint32_t k) {
    return {F.frob(M.a, k), F.frob(M.b, k), F.frob(M.c, k), F.frob(M.d, k)};
}

inline bool mat2_lower_triangular(const Field& F, const Mat2& M) { return M.b == F.zero(); }

// --- dense row-vector linear algebra over K ---------------------------------

inline vec vec_zero(std::size_t n) { return vec(n, 0); }

inline vec vec_add(const Field& F, const vec& a, const vec& b) {
    vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.add(a[i], b[i]);
    return out;
}

inline vec vec_sub(const Field& F, const vec& a, const vec& b) {
    vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.sub(a[i], b[i]);
    return out;
}

inline vec vec_neg(const Field& F, const vec& a) {
    vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.neg(a[i]);
    return out;
}

inline vec vec_scale(const Field& F, fel s, const vec& a) {
    vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.mul(s, a[i]);
    return out;
}

inline vec vec_frob(const Field& F, const vec& a, std::uint32_t k) {
    vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = F.frob(a[i], k);
    return out;
}

inline bool vec_is_zero(const vec& a) {
    for (fel x : a)
        if (x != 0) return false;
    return true;
}

// row vector times matrix
inline vec vec_app(const Field& F, const vec& v, const MatN& M) {
    vec out(M.empty() ? 0 : M[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = F.add(out[j], F.mul(v[i], M[i][j]));
    }
    return out;
}

inline MatN matn_identity(const Field& F, std::size_t n) {
    MatN M(n, vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) M[i][i] = F.one();
    return M;
}

inline MatN matn_mul(const Field& F, const MatN& A, const MatN& B) {
    std::size_t r = A.size(), k = B.size(), c = B.empty() ? 0 : B[0].size();
    MatN out(r, vec(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (A[i][t] == 0) continue;
            for (std::size_t j = 0; j < c; ++j)
                out[i][j] = F.add(out[i][j], F.mul(A[i][t], B[t][j]));
        }
    return out;
}

inline MatN matn_transpose(const MatN& A) {
    if (A.empty()) return {};
    MatN out(A[0].size(), vec(A.size(), 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[0].size(); ++j) out[j][i] = A[i][j];
    return out;
}

inline MatN matn_frob(const Field& F, const MatN& A, std::uint32_t k) {
    MatN out = A;
    for (auto& row : out)
        for (auto& x : row) x = F.frob(x, k);
    return out;
}

inline std::size_t matn_rank(const Field& F, MatN A) {
    std::size_t rows = A.size(), cols = rows ? A[0].size() : 0, r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && A[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[r], A[piv]);
        fel iv = F.inv(A[r][col]);
        for (std::size_t j = col; j < cols; ++j) A[r][j] = F.mul(iv, A[r][j]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][col] == 0) continue;
            fel f = A[i][col];
            for (std::size_t j = col; j < cols; ++j)
                A[i][j] = F.sub(A[i][j], F.mul(f, A[r][j]));
        }
        ++r;
    }
    return r;
}

inline MatN matn_inv(const Field& F, const MatN& A) {
    std::size_t n = A.size();
    MatN W = A;
    MatN I = matn_identity(F, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && W[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(W[col], W[piv]);
        std::swap(I[col], I[piv]);
        fel iv = F.inv(W[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            W[col][j] = F.mul(iv, W[col][j]);
            I[col][j] = F.mul(iv, I[col][j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || W[i][col] == 0) continue;
            fel f = W[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                W[i][j] = F.sub(W[i][j], F.mul(f, W[col][j]));
                I[i][j] = F.sub(I[i][j], F.mul(f, I[col][j]));
            }
        }
    }
    return I;
}

// --- homogeneous polynomial expansion ---------------------------------------

// product of homogeneous forms (coefficients by y-exponent): plain convolution
inline vec homog_mul(const Field& F, const vec& f, const vec& g) {
    vec out(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(f[i], g[j]));
    }
    return out;
}

inline vec homog_pow(const Field& F, const vec& f, std::uint32_t e) {
    vec acc = {F.one()};
    for (std::uint32_t i = 0; i < e; ++i) acc = homog_mul(F, acc, f);
    return acc;
}

// matrix of the substitution x -> ax + by, y -> cx + dy on degree-n forms
inline MatN rho_vn(const Field& F, std::uint32_t n, const Mat2& M) {
    const vec img_x = {M.a, M.b};  // a x + b y
    const vec img_y = {M.c, M.d};  // c x + d y
    MatN out(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i) {
        vec row = homog_mul(F, homog_pow(F, img_x, n - i), homog_pow(F, img_y, i));
        row.resize(n + 1, 0);
        out[i] = std::move(row);
    }
    return out;
}

// contragredient matrix on Lambda (degree p slice): inverse transpose
inline MatN rho_lambda(const Field& F, std::uint32_t p_deg, const Mat2& M) {
    return matn_transpose(matn_inv(F, rho_vn(F, p_deg, M)));
}

// full twisted action of (e, theta, M) on V_n: Frobenius first, then the
// substitution, then the scalar
inline vec act_vn(const Field& F, std::uint32_t n, const vec& v,
                  std::uint32_t e, fel theta, const Mat2& M) {
    return vec_scale(F, theta, vec_app(F, vec_frob(F, v, e), rho_vn(F, n, M)));
}

// twisted action on Lambda: scalars act by their inverses
inline vec act_lambda(const Field& F, std::uint32_t p_deg, const vec& eta,
                      std::uint32_t e, fel theta, const Mat2& M) {
    return vec_scale(F, F.inv(theta),
                     vec_app(F, vec_frob(F, eta, e), rho_lambda(F, p_deg, M)));
}

// coordinatewise pairing V_p x Lambda -> K
inline fel pair_vl(const Field& F, const vec& v, const vec& eta) {
    fel acc = F.zero();
    for (std::size_t i = 0; i < v.size(); ++i) acc = F.add(acc, F.mul(v[i], eta[i]));
    return acc;
}

// --- structure maps (linear parts) ------------------------------------------

// "differentiate by y, lower the y-degree": x^(n-i) y^i -> i x^(n-i) y^(i-1)
// as a map V_n -> V_(n-1); kernel <x^n>.
inline vec gamma_lin(const Field& F, std::uint32_t n, const vec& v) {
    vec out(n, 0);
    for (std::uint32_t i = 1; i <= n; ++i)
        out[i - 1] = F.mul(F.embed(i), v[i]);
    return out;
}

// quotient identification Lambda -> V_(p-1): drop the highest coordinate and
// reverse (coordinate i of the image is coordinate p-1-i of the source);
// kernel is the top line.
inline vec lambda_quot_lin(const Field& F, std::uint32_t p_deg, const vec& eta) {
    (void)F;
    vec out(p_deg, 0);
    for (std::uint32_t i = 0; i < p_deg; ++i) out[i] = eta[p_deg - 1 - i];
    return out;
}

// "differentiate by x and by y": x^i y^j -> i x^(i-1) y^(j-1) on degree-p
// forms, landing in degree p-2; kernel <x^p, y^p>.
inline vec psi_lin(const Field& F, std::uint32_t p_deg, const vec& v) {
    vec out(p_deg - 1, 0);
    for (std::uint32_t k = 1; k < p_deg; ++k)
        out[k - 1] = F.mul(F.embed(p_deg - k), v[k]);
    return out;
}

// --- unipotent Jordan data --------------------------------------------------

// Jordan block profile of a unipotent matrix over K: profile[s] = number of
// blocks of size s, computed from the kernel-dimension sequence of (M - I)^k.
inline std::vector<std::pair<std::size_t, std::size_t>> jordan_profile(
    const Field& F, const MatN& M) {
    std::size_t n = M.size();
    MatN N = M;
    for (std::size_t i = 0; i < n; ++i) N[i][i] = F.sub(N[i][i], F.one());
    std::vector<std::size_t> kdim = {0};
    MatN P = matn_identity(F, n);
    while (kdim.back() < n) {
        P = matn_mul(F, P, N);
        kdim.push_back(n - matn_rank(F, P));
    }
    std::vector<std::size_t> atleast;  // atleast[s-1] = #blocks of size >= s
    for (std::size_t i = 1; i < kdim.size(); ++i)
        atleast.push_back(kdim[i] - kdim[i - 1]);
    std::vector<std::pair<std::size_t, std::size_t>> profile;
    for (std::size_t s = 1; s <= atleast.size(); ++s) {
        std::size_t cnt = atleast[s - 1] - (s < atleast.size() ? atleast[s] : 0);
        if (cnt) profile.emplace_back(s, cnt);
    }
    return profile;
}

}  // namespace polyfus
