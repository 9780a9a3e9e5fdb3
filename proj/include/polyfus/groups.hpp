#pragma once

// The polynomial p-groups and their ambient parabolic overgroups.
//
// Interior elements are pairs (c, v) with c in (K, +) and v in the module
// (V_n or Lambda); (c1,v1)(c2,v2) = (c1+c2, v1*u_{c2} + v2), i.e. the
// unipotent part of the ambient group acts on the module coordinate.
//
// Ambient elements are 4-tuples (e, theta, A, v): a Frobenius power, a scalar,
// a 2x2 invertible matrix, and a module translation.  The product twists the
// left factor by the right one:
//   (e1,t1,A1,v1)(e2,t2,A2,v2)
//     = (e1+e2, t1^(p^e2) t2, A1^(p^e2) A2, v1.(e2,t2,A2) + v2),
// where v.(e,t,A) is the module action (Frobenius first, then the
// substitution, then the scalar twist).  Three ambience levels share this law
// and differ only in which Frobenius powers are allowed: the full group
// (dagger) takes all of Gal(K/F_p), the star group its p'-part, and the plain
// group only the identity.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyfus/field.hpp"
#include "polyfus/modules.hpp"

namespace polyfus {

enum class ModKind { Vn, Lambda };

// --- interior group S = U x| M ----------------------------------------------

struct SElement {
    fel c = 0;
    vec v;
    bool operator==(const SElement&) const = default;
};

class SGroup {
public:
    SGroup(const Field& F, ModKind kind, std::uint32_t n)
        : F_(F), kind_(kind), n_(kind == ModKind::Lambda ? F.p() : n) {
        if (kind == ModKind::Vn) {
            if (n < 1 || n > F.p())
                throw std::invalid_argument("require 1 <= n <= p");
        }
        dim_ = n_ + 1;
        // cache the module matrix of every unipotent u_c
        uact_.resize(F.q());
        for (std::uint64_t c = 0; c < F.q(); ++c) {
            Mat2 u{F.one(), F.zero(), fel(c), F.one()};
            uact_[c] = (kind_ == ModKind::Vn) ? rho_vn(F, n_, u) : rho_lambda(F, F.p(), u);
        }
    }

    const Field& field() const { return F_; }
    ModKind kind() const { return kind_; }
    std::uint32_t degree() const { return n_; }     // n, or p for Lambda
    std::uint32_t dim() const { return dim_; }      // module dimension n+1
    std::uint64_t order() const {                   // |S| = q^(dim+1)
        std::uint64_t o = F_.q();
        for (std::uint32_t i = 0; i < dim_; ++i) o *= F_.q();
        return o;
    }

    SElement identity() const { return {0, vec(dim_, 0)}; }

    // module action of u_c (cached)
    vec act_u(const vec& v, fel c) const { return vec_app(F_, v, uact_[c]); }

    SElement mul(const SElement& a, const SElement& b) const {
        return {F_.add(a.c, b.c), vec_add(F_, act_u(a.v, b.c), b.v)};
    }

    SElement inv(const SElement& a) const {
        fel c = F_.neg(a.c);
        return {c, vec_neg(F_, act_u(a.v, c))};
    }

    SElement conj(const SElement& a, const SElement& g) const {  // g^-1 a g
        return mul(mul(inv(g), a), g);
    }

    SElement comm(const SElement& a, const SElement& b) const {  // a^-1 b^-1 a b
        return mul(mul(inv(a), inv(b)), mul(a, b));
    }

    SElement pow(const SElement& a, std::uint64_t k) const {
        SElement acc = identity(), base = a;
        while (k) {
            if (k & 1) acc = mul(acc, base);
            base = mul(base, base);
            k >>= 1;
        }
        return acc;
    }

    std::uint64_t element_order(const SElement& a) const {
        SElement cur = a;
        std::uint64_t o = 1;
        while (!(cur == identity())) {
            cur = mul(cur, a);
            ++o;
            if (o > order()) throw std::logic_error("element order runaway");
        }
        return o;
    }

private:
    const Field& F_;
    ModKind kind_;
    std::uint32_t n_, dim_;
    std::vector<MatN> uact_;
};

// --- ambient group elements --------------------------------------------------

enum class Ambience { Dagger, Star, Plain };

struct PElement {
    std::uint32_t e = 0;  // Frobenius exponent, reduced mod m
    fel theta = 1;
    Mat2 A;
    vec v;
    bool operator==(const PElement&) const = default;
};

class PGroup {
public:
    PGroup(const Field& F, ModKind kind, std::uint32_t n, Ambience amb)
        : F_(F), kind_(kind), amb_(amb), n_(kind == ModKind::Lambda ? F.p() : n) {
        if (kind == ModKind::Vn && (n < 1 || n > F.p()))
            throw std::invalid_argument("require 1 <= n <= p");
        dim_ = n_ + 1;
        // p-part of m: the star ambience only admits Frobenius powers that are
        // multiples of it (the p'-part of the Galois group)
        mp_ = 1;
        std::uint32_t mm = F.m();
        while (mm % F.p() == 0) {
            mp_ *= F.p();
            mm /= F.p();
        }
    }

    const Field& field() const { return F_; }
    ModKind kind() const { return kind_; }
    Ambience ambience() const { return amb_; }
    std::uint32_t degree() const { return n_; }
    std::uint32_t dim() const { return dim_; }
    std::uint32_t frobenius_step() const { return amb_ == Ambience::Star ? mp_ : 1; }
    std::uint32_t galois_part_order() const {
        switch (amb_) {
            case Ambience::Dagger: return F_.m();
            case Ambience::Star: return F_.m() / mp_;
            case Ambience::Plain: return 1;
        }
        return 1;
    }

    PElement identity() const { return {0, F_.one(), mat2_identity(F_), vec(dim_, 0)}; }

    bool valid(const PElement& g) const {
        if (g.e >= F_.m() || g.theta == F_.zero()) return false;
        if (mat2_det(F_, g.A) == F_.zero()) return false;
        if (g.v.size() != dim_) return false;
        switch (amb_) {
            case Ambience::Dagger: return true;
            case Ambience::Star: return g.e % mp_ == 0;
            case Ambience::Plain: return g.e == 0;
        }
        return false;
    }

    vec act(const vec& v, std::uint32_t e, fel theta, const Mat2& A) const {
        return kind_ == ModKind::Vn ? act_vn(F_, n_, v, e, theta, A)
                                    : act_lambda(F_, F_.p(), v, e, theta, A);
    }

    PElement mul(const PElement& a, const PElement& b) const {
        return {(a.e + b.e) % F_.m(),
                F_.mul(F_.frob(a.theta, b.e), b.theta),
                mat2_mul(F_, mat2_frob(F_, a.A, b.e), b.A),
                vec_add(F_, act(a.v, b.e, b.theta, b.A), b.v)};
    }

    PElement inv(const PElement& a) const {
        std::uint32_t e = (F_.m() - a.e) % F_.m();
        fel theta = F_.inv(F_.frob(a.theta, e));
        Mat2 A = mat2_inv(F_, mat2_frob(F_, a.A, e));
        return {e, theta, A, vec_neg(F_, act(a.v, e, theta, A))};
    }

    PElement conj(const PElement& a, const PElement& g) const {  // g^-1 a g
        return mul(mul(inv(g), a), g);
    }

    PElement comm(const PElement& a, const PElement& b) const {
        return mul(mul(inv(a), inv(b)), mul(a, b));
    }

    PElement pow(const PElement& a, std::uint64_t k) const {
        PElement acc = identity(), base = a;
        while (k) {
            if (k & 1) acc = mul(acc, base);
            base = mul(base, base);
            k >>= 1;
        }
        return acc;
    }

    // embed the interior group: (c, v) -> (0, 1, u_c, v)
    PElement embed(const SElement& s) const {
        return {0, F_.one(), Mat2{F_.one(), F_.zero(), s.c, F_.one()}, s.v};
    }

    // project back when the element lies in S = U x| M
    std::optional<SElement> project(const PElement& g) const {
        if (g.e != 0 || g.theta != F_.one()) return std::nullopt;
        if (g.A.a != F_.one() || g.A.b != F_.zero() || g.A.d != F_.one())
            return std::nullopt;
        return SElement{g.A.c, g.v};
    }

    // conjugation action of the ambient group on interior elements
    std::optional<SElement> conj_s(const SElement& s, const PElement& g) const {
        return project(conj(embed(s), g));
    }

    // named subgroup membership tests for elements of this ambient group
    bool in_d(const PElement& g) const { return valid(g) && vec_is_zero(g.v); }
    bool in_b(const PElement& g) const {
        return in_d(g) && mat2_lower_triangular(F_, g.A);
    }
    bool in_sigma(const PElement& g) const {
        return in_d(g) && g.A.b == F_.zero() && g.A.c == F_.zero();
    }
    bool in_u(const PElement& g) const {
        return g.e == 0 && g.theta == F_.one() && vec_is_zero(g.v) &&
               g.A.a == F_.one() && g.A.b == F_.zero() && g.A.d == F_.one();
    }
    bool in_s(const PElement& g) const { return project(g).has_value(); }
    bool in_module(const PElement& g) const {
        auto s = project(g);
        return s.has_value() && s->c == F_.zero();
    }

private:
    const Field& F_;
    ModKind kind_;
    Ambience amb_;
    std::uint32_t n_, dim_, mp_;
};

// --- one-dimensional and four-dimensional twisted linear groups --------------

// element (e, s) of Gal(K) x| K* with (e1,s1)(e2,s2) = (e1+e2, s1^(p^e2) s2)
struct Gamma1Element {
    std::uint32_t e = 0;
    fel s = 1;
    bool operator==(const Gamma1Element&) const = default;
};

inline Gamma1Element gamma1_mul(const Field& F, const Gamma1Element& a,
                                const Gamma1Element& b) {
    return {(a.e + b.e) % F.m(), F.mul(F.frob(a.s, b.e), b.s)};
}

inline Gamma1Element gamma1_inv(const Field& F, const Gamma1Element& a) {
    std::uint32_t e = (F.m() - a.e) % F.m();
    return {e, F.inv(F.frob(a.s, e))};
}

// element (e, X) of Gal(K) x| GL_4(K), same twist
struct Gamma4Element {
    std::uint32_t e = 0;
    MatN X;
    bool operator==(const Gamma4Element&) const = default;
};

inline Gamma4Element gamma4_mul(const Field& F, const Gamma4Element& a,
                                const Gamma4Element& b) {
    return {(a.e + b.e) % F.m(), matn_mul(F, matn_frob(F, a.X, b.e), b.X)};
}

inline Gamma4Element gamma4_identity(const Field& F) {
    return {0, matn_identity(F, 4)};
}

// --- structure homomorphisms -------------------------------------------------

// S_n -> S_(n-1), kernel the centre <x^n>
inline SElement gamma_hom(const Field& F, std::uint32_t n, const SElement& s) {
    return {s.c, gamma_lin(F, n, s.v)};
}

// S_Lambda -> S_(p-1), kernel the top line
inline SElement lambda_quot_hom(const Field& F, const SElement& s) {
    return {s.c, lambda_quot_lin(F, F.p(), s.v)};
}

// The normalizer of R in the Lambda-side ambient group: lower-triangular
// matrix part and module part supported on the bottom weight slice
// {e_(p-2), e_(p-1), e_p}.
inline bool in_psi_star_domain(const Field& F, const PElement& g) {
    if (!mat2_lower_triangular(F, g.A)) return false;
    for (std::size_t i = 0; i + 2 < g.v.size() - 1; ++i)
        if (g.v[i] != F.zero()) return false;
    return true;
}

// The 4x4 realization of the R-normalizer, used to glue the amalgam:
// (e, theta, [[a,0],[c,b]], lam e_p + mu e_(p-1) + nu e_(p-2)) maps to
//   [ theta a b^p      0                0                theta a b^p lam ]
//   [ 0                theta a^2 b^(p-1) theta a^2 b^(p-1) nu  theta a^2 b^(p-1) mu ]
//   [ 0                0                b                c               ]
//   [ 0                0                0                a               ]
inline Gamma4Element psi_star(const Field& F, const PElement& g) {
    if (!in_psi_star_domain(F, g))
        throw std::domain_error("element outside the R-normalizer");
    const std::uint32_t p = F.p();
    fel a = g.A.a, c = g.A.c, b = g.A.d;
    fel lam = g.v[p], mu = g.v[p - 1], nu = g.v[p - 2];
    fel x11 = F.mul(g.theta, F.mul(a, F.pow(b, std::int64_t(p))));
    fel x22 = F.mul(g.theta, F.mul(F.mul(a, a), F.pow(b, std::int64_t(p) - 1)));
    MatN X(4, vec(4, 0));
    X[0][0] = x11;
    X[0][3] = F.mul(x11, lam);
    X[1][1] = x22;
    X[1][2] = F.mul(x22, nu);
    X[1][3] = F.mul(x22, mu);
    X[2][2] = b;
    X[2][3] = c;
    X[3][3] = a;
    return {g.e, std::move(X)};
}

// membership in the 4x4 parabolic pattern (x6 = matrix[2][1] is allowed to be
// non-zero there; the psi_star image always has it zero)
inline bool in_pr_pattern(const Field& F, const Gamma4Element& g) {
    const MatN& X = g.X;
    if (X.size() != 4) return false;
    for (auto [i, j] : {std::pair<int, int>{1, 0}, {2, 0}, {3, 0}, {0, 1}, {0, 2}, {3, 1}, {3, 2}})
        if (X[std::size_t(i)][std::size_t(j)] != F.zero()) return false;
    fel blk = F.sub(F.mul(X[1][1], X[2][2]), F.mul(X[1][2], X[2][1]));
    return X[0][0] != F.zero() && blk != F.zero() && X[3][3] != F.zero();
}

// diagonal-part map on the torus: t = (e, lam, diag(mu, nu), 0) acts on S/V by
// mu nu^-1 and on the centre line by lam mu^n; delta records the pair.
inline std::pair<Gamma1Element, Gamma1Element> delta_map(const Field& F,
                                                         std::uint32_t n,
                                                         const PElement& t) {
    if (t.A.b != F.zero() || t.A.c != F.zero() || !vec_is_zero(t.v))
        throw std::domain_error("element outside the diagonal torus");
    fel mu = t.A.a, nu = t.A.d;
    return {Gamma1Element{t.e, F.mul(mu, F.inv(nu))},
            Gamma1Element{t.e, F.mul(t.theta, F.pow(mu, std::int64_t(n)))}};
}

}  // namespace polyfus
