#pragma once

// Structural layer: closed-form predictions for central and commutator series,
// the named subgroups (V, U, R = UZ(S), Q = UZ_2(S), U[V,S], the index-q
// family H_lambda), membership tests for the B/C subgroup families, and the
// explicit quotient/similarity coefficient maps.
//
// Everything here is a *prediction* expressed through basis formulas or small
// linear algebra; the verification suites compare these predictions against
// the definition-level Enumerator computations.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyfus/enumerate.hpp"
#include "polyfus/field.hpp"
#include "polyfus/groups.hpp"
#include "polyfus/modules.hpp"

namespace polyfus {

struct SeriesReport {
    std::string kind;  // upper_central | lower_central | commutator_chain | weight_filtration
    std::vector<Subgroup> terms;
    std::vector<std::uint64_t> orders;

    void fill_orders() {
        orders.clear();
        for (const Subgroup& t : terms) orders.push_back(t.size());
    }
    bool strictly_monotone() const {
        for (std::size_t i = 1; i < orders.size(); ++i) {
            if (kind == "lower_central" || kind == "commutator_chain") {
                if (orders[i] >= orders[i - 1]) return false;
            } else if (orders[i] <= orders[i - 1]) {
                return false;
            }
        }
        return true;
    }
};

enum class SeriesMode { Structural, Bruteforce };

class StructureLab {
public:
    explicit StructureLab(const SGroup& S) : S_(S), en_(S) {}

    const SGroup& group() const { return S_; }
    const Field& field() const { return S_.field(); }
    Enumerator& en() { return en_; }
    const Enumerator& en() const { return en_; }

    bool lambda_kind() const { return S_.kind() == ModKind::Lambda; }
    std::uint32_t p() const { return field().p(); }
    std::uint64_t q() const { return field().q(); }
    // family-size parameter: d = 1 for S_n, d = q for S_Lambda
    std::uint64_t d_param() const { return lambda_kind() ? q() : 1; }

    // ---- predicted subgroups --------------------------------------------

    Subgroup trivial() const { return Subgroup{{en_.identity()}}; }

    // Z_i(S) by basis formulas.
    //   S_n, n <= p-1 : Z_i = C_{i-1} = <x^n, ..., x^{n-i+1}y^{i-1}>, Z_{n+1} = S
    //   S_p(q)        : Z_1 = <x^p> (q > p) or <x^p, x^{p-1}y - y^p> (q = p);
    //                   Z_i = <x^p, y^p> + <x^{p-1}y, ..., x^{p-i+1}y^{i-1}>
    //                   for 2 <= i <= p-1; Z_p = S
    //   S_Lambda      : Z_i = <e_{p-i}, ..., e_p> for 1 <= i <= p-1; Z_p = S
    Subgroup predicted_upper(std::uint32_t i) const {
        const std::uint32_t n = S_.degree();
        if (i == 0) return trivial();
        if (lambda_kind()) {
            if (i >= p()) return en_.whole_group();
            return en_.module_span(p() - i, p());
        }
        if (n < p()) {
            if (i >= n + 1) return en_.whole_group();
            return en_.module_span(0, i - 1);
        }
        // n == p: the S_p(q) case
        if (i >= p()) return en_.whole_group();
        if (i == 1) {
            if (q() > p()) return en_.module_span(0, 0);
            return twisted_centre_qp();
        }
        std::vector<std::uint32_t> coords = {0, p()};
        for (std::uint32_t j = 1; j + 1 <= i; ++j) coords.push_back(j);
        return en_.module_span_coords(coords);
    }

    // q = p only: C_V(S) = <x^p, x^{p-1}y - y^p> inside V_p(p)
    Subgroup twisted_centre_qp() const {
        const Field& F = field();
        Subgroup out;
        for (std::uint64_t a = 0; a < q(); ++a)
            for (std::uint64_t b = 0; b < q(); ++b) {
                SElement s{0, vec(S_.dim(), 0)};
                s.v[0] = fel(a);
                s.v[1] = fel(b);
                s.v[p()] = F.neg(fel(b));
                out.elems.push_back(en_.pack(s));
            }
        std::sort(out.elems.begin(), out.elems.end());
        return out;
    }

    // [V, S; i] by basis formulas.
    //   S_n, n <= p-1 : [V,S;i] = C_{n-i} (trivial once i > n)
    //   S_p(q)        : [V,S;i] = <x^p, ..., x^{i+1}y^{p-i-1}> (trivial at i = p)
    //   S_Lambda      : i = 1: {eta_0 = 0} when q > p, module-level span when
    //                   q = p; i >= 2: <e_i, ..., e_{p-1}>
    Subgroup predicted_VSi(std::uint32_t i) const {
        const std::uint32_t n = S_.degree();
        if (i == 0) return en_.module_subgroup();
        if (lambda_kind()) {
            if (i >= p()) return trivial();
            if (i == 1) {
                if (q() > p()) return en_.module_span(1, p());
                return module_commutator_chain(1);
            }
            return en_.module_span(i, p() - 1);
        }
        if (n < p()) {
            if (i > n) return trivial();
            return en_.module_span(0, n - i);
        }
        if (i >= p()) return trivial();
        return en_.module_span(0, p() - 1 - i);
    }

    Subgroup predicted_centre() const { return predicted_upper(1); }
    Subgroup predicted_derived() const { return predicted_VSi(1); }

    // module-level commutator chain by linear algebra: the K-span of
    // { v (rho(u_c) - 1) ... } iterated i times, materialized as a subgroup.
    // Independent of the group-BFS engine.
    Subgroup module_commutator_chain(std::uint32_t i) const {
        const Field& F = field();
        std::uint32_t dim = S_.dim();
        std::vector<vec> basis;
        for (std::uint32_t j = 0; j < dim; ++j) {
            vec e(dim, 0);
            e[j] = F.one();
            basis.push_back(e);
        }
        for (std::uint32_t step = 0; step < i; ++step) {
            std::vector<vec> next;
            for (const vec& v : basis)
                for (std::uint64_t c = 1; c < q(); ++c) {
                    vec w = vec_sub(F, S_.act_u(v, fel(c)), v);
                    if (!vec_is_zero(w)) next.push_back(w);
                }
            basis = row_space_basis(next);
            if (basis.empty()) break;
        }
        return span_of_rows(basis);
    }

    // materialize the K-span of the given module vectors as a subgroup
    Subgroup span_of_rows(const std::vector<vec>& rows) const {
        const Field& F = field();
        std::vector<vec> basis = row_space_basis(rows);
        Subgroup out;
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) count *= q();
        out.elems.reserve(count);
        std::vector<std::uint64_t> digits(basis.size(), 0);
        for (;;) {
            vec v(S_.dim(), 0);
            for (std::size_t i = 0; i < basis.size(); ++i)
                v = vec_add(F, v, vec_scale(F, fel(digits[i]), basis[i]));
            out.elems.push_back(en_.pack({0, v}));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == q()) digits[i++] = 0;
            if (i == digits.size()) break;
        }
        std::sort(out.elems.begin(), out.elems.end());
        out.elems.erase(std::unique(out.elems.begin(), out.elems.end()),
                        out.elems.end());
        return out;
    }

    // row-reduce to a basis of the K-row space
    std::vector<vec> row_space_basis(std::vector<vec> rows) const {
        const Field& F = field();
        std::vector<vec> basis;
        std::size_t dim = S_.dim();
        std::vector<std::size_t> pivots;
        for (vec r : rows) {
            for (std::size_t b = 0; b < basis.size(); ++b) {
                if (r[pivots[b]] != F.zero()) {
                    fel f = F.mul(r[pivots[b]], F.inv(basis[b][pivots[b]]));
                    r = vec_sub(F, r, vec_scale(F, f, basis[b]));
                }
            }
            std::size_t piv = dim;
            for (std::size_t j = 0; j < dim; ++j)
                if (r[j] != F.zero()) { piv = j; break; }
            if (piv == dim) continue;
            basis.push_back(r);
            pivots.push_back(piv);
        }
        return basis;
    }

    // U = {(c, 0)}
    Subgroup Usub() const {
        Subgroup out;
        for (std::uint64_t c = 0; c < q(); ++c) out.elems.push_back(key_t(c));
        return out;
    }

    // subgroup {(c, v) : v in span} for a module-subgroup span
    Subgroup u_times(const Subgroup& span) const {
        Subgroup out;
        out.elems.reserve(span.size() * q());
        for (key_t k : span.elems)
            for (std::uint64_t c = 0; c < q(); ++c) out.elems.push_back(k + c);
        std::sort(out.elems.begin(), out.elems.end());
        return out;
    }

    Subgroup Rsub() const { return u_times(predicted_centre()); }
    Subgroup Qsub() const { return u_times(predicted_upper(2)); }
    Subgroup UVS() const { return u_times(predicted_derived()); }

    // S_Lambda only: H_lambda = {(c, eta) : eta_0 = lambda c}; H_0 = U[V,S]
    // when q > p, and H_infinity = V.  These are the q+1 index-q subgroups
    // containing the derived subgroup's ambient hyperplane data.
    Subgroup charsub_member(fel lambda) const {
        if (!lambda_kind()) throw std::invalid_argument("charsub_member: S_Lambda only");
        const Field& F = field();
        Subgroup out;
        for (key_t k = 0; k < en_.order(); ++k) {
            SElement s = en_.unpack(k);
            if (s.v[0] == F.mul(lambda, s.c)) out.elems.push_back(k);
        }
        return out;
    }

    // ---- series ----------------------------------------------------------

    SeriesReport central_series(SeriesMode mode) const {
        SeriesReport rep;
        rep.kind = "upper_central";
        if (mode == SeriesMode::Bruteforce) {
            rep.terms = en_.upper_central_series();
        } else {
            std::uint32_t top = lambda_kind() ? p() : std::min(S_.degree() + 1, p());
            for (std::uint32_t i = 0; i <= top; ++i)
                rep.terms.push_back(predicted_upper(i));
        }
        rep.fill_orders();
        return rep;
    }

    SeriesReport lower_series(SeriesMode mode) const {
        SeriesReport rep;
        rep.kind = "lower_central";
        if (mode == SeriesMode::Bruteforce) {
            rep.terms = en_.lower_central_series();
        } else {
            rep.terms.push_back(en_.whole_group());
            for (std::uint32_t i = 1;; ++i) {
                Subgroup t = predicted_VSi(i);
                rep.terms.push_back(t);
                if (t.size() == 1) break;
            }
        }
        rep.fill_orders();
        return rep;
    }

    // [A, S; i] for i = 1..depth by generator commutators (engine side)
    SeriesReport commutator_chain(const Subgroup& A, std::uint32_t depth) const {
        SeriesReport rep;
        rep.kind = "commutator_chain";
        Subgroup cur = A;
        rep.terms.push_back(cur);
        for (std::uint32_t i = 1; i <= depth && cur.size() > 1; ++i) {
            cur = en_.commutator_with_group(cur);
            rep.terms.push_back(cur);
        }
        rep.fill_orders();
        return rep;
    }

    // [A, z; i]: iterated commutation with the single element z
    SeriesReport commutator_chain_z(const Subgroup& A, key_t z,
                                    std::uint32_t depth) const {
        SeriesReport rep;
        rep.kind = "commutator_chain";
        Subgroup cur = A;
        rep.terms.push_back(cur);
        for (std::uint32_t i = 1; i <= depth && cur.size() > 1; ++i) {
            std::vector<key_t> seeds;
            for (key_t a : cur.elems) {
                key_t c = en_.comm(a, z);
                if (c != en_.identity()) seeds.push_back(c);
            }
            cur = seeds.empty() ? Subgroup{{en_.identity()}} : en_.closure(seeds);
            rep.terms.push_back(cur);
        }
        rep.fill_orders();
        return rep;
    }

    // weight filtration C_0 < C_1 < ... < C_n (S_n only)
    SeriesReport weight_filtration() const {
        if (lambda_kind())
            throw std::invalid_argument("weight filtration: S_n only");
        SeriesReport rep;
        rep.kind = "weight_filtration";
        for (std::uint32_t i = 0; i <= S_.degree(); ++i)
            rep.terms.push_back(en_.module_span(0, i));
        rep.fill_orders();
        return rep;
    }

    // ---- p-th powers and exponents --------------------------------------

    // closed-form p-th power: S_n with n >= p-1 sends (c,v) to
    // (0, -c^{p-1} v_{p-1} x^n); S_Lambda sends (c,eta) to
    // (0, -c^{p-1} eta_0 \bar{xy^{p-1}}); everything else is killed.
    SElement pth_power_formula(const SElement& s) const {
        const Field& F = field();
        SElement out = S_.identity();
        fel cf = F.pow(s.c, std::int64_t(p()) - 1);
        if (lambda_kind()) {
            out.v[p() - 1] = F.neg(F.mul(cf, s.v[0]));
        } else if (S_.degree() + 1 >= p()) {
            out.v[0] = F.neg(F.mul(cf, s.v[p() - 1]));
        }
        return out;
    }

    std::uint64_t predicted_exponent() const {
        if (lambda_kind()) return std::uint64_t(p()) * p();
        return S_.degree() + 1 >= p() ? std::uint64_t(p()) * p() : p();
    }

    // ---- linear-algebra centralizers ------------------------------------

    // |C_V(z)| for z with unipotent part c != 0, via the rank of rho(u_c) - 1
    std::uint64_t cv_order_linear(fel c) const {
        const Field& F = field();
        std::uint32_t dim = S_.dim();
        MatN M(dim, vec(dim, 0));
        for (std::uint32_t i = 0; i < dim; ++i) {
            vec e(dim, 0);
            e[i] = F.one();
            vec img = S_.act_u(e, c);
            for (std::uint32_t j = 0; j < dim; ++j) M[i][j] = img[j];
            M[i][i] = F.sub(M[i][i], F.one());
        }
        std::size_t r = matn_rank(F, M);
        std::uint64_t out = 1;
        for (std::size_t i = 0; i < dim - r; ++i) out *= q();
        return out;
    }

    // ---- B(S) / C(S) family membership ----------------------------------

    bool is_elementary_abelian(const Subgroup& A) const {
        return en_.is_abelian(A) && en_.exponent_of(A) <= p();
    }

    bool is_class_exactly_two(const Subgroup& A) const {
        if (en_.is_abelian(A)) return false;
        Subgroup der = en_.commutator_subgroup(A, A);
        for (key_t d : der.elems)
            if (!en_.centralizes(d, A)) return false;
        return true;
    }

    bool covers_with_V(const Subgroup& A) const {
        Subgroup V = en_.module_subgroup();
        Subgroup cap = en_.intersect(A, V);
        return A.size() / cap.size() == q();  // |AV| = |A||V|/|A cap V| = |S|
    }

    bool in_B_family(const Subgroup& A) const {
        return A.size() == q() * q() * d_param() && is_elementary_abelian(A) &&
               covers_with_V(A);
    }

    bool in_C_family(const Subgroup& A) const {
        return A.size() == q() * q() * q() * d_param() &&
               is_class_exactly_two(A) && en_.exponent_of(A) <= p() &&
               covers_with_V(A);
    }

    // ---- explicit coefficient maps --------------------------------------

    // truncation map [V,S;i]U -> S_{n-i}(q): (c, v) |-> (c, v_0..v_{n-i});
    // the same map realizes N^i = R Z_{i+1}(S) -> S_i(q) with i = n - j.
    static SElement similarity_map(const SGroup& src, std::uint32_t i,
                                   const SGroup& dst, const SElement& g) {
        if (src.kind() != ModKind::Vn || dst.kind() != ModKind::Vn)
            throw std::invalid_argument("similarity_map: S_n only");
        if (dst.degree() + i != src.degree())
            throw std::invalid_argument("similarity_map: degree mismatch");
        SElement out{g.c, vec(dst.dim(), 0)};
        for (std::uint32_t j = 0; j < dst.dim(); ++j) out.v[j] = g.v[j];
        for (std::uint32_t j = dst.dim(); j < src.dim(); ++j)
            if (g.v[j] != 0)
                throw std::invalid_argument("similarity_map: element outside [V,S;i]U");
        return out;
    }
};

}  // namespace polyfus
