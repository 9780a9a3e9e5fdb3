#pragma once

// Brute-force enumeration engine for the interior p-groups.
//
// Elements are packed into 64-bit mixed-radix keys: digit 0 (least
// significant, base q) is the unipotent coordinate c, digits 1..dim are the
// module coordinates.  Every key below |S| = q^(dim+1) decodes to a valid
// element, so the whole group is simply the key range [0, |S|).
//
// The engine provides independent, definition-level computations (closures,
// centralizers, central series, subgroup orbits) that the verification suites
// compare against the closed-form structural predictions.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "polyfus/field.hpp"
#include "polyfus/groups.hpp"
#include "polyfus/modules.hpp"

namespace polyfus {

using key_t = std::uint64_t;

struct Subgroup {
    std::vector<key_t> elems;  // sorted ascending

    std::size_t size() const { return elems.size(); }
    bool contains(key_t k) const {
        return std::binary_search(elems.begin(), elems.end(), k);
    }
    bool operator==(const Subgroup&) const = default;
};

// size tiers: groups up to the exhaustive cap are fully enumerated; up to the
// sampled cap they are probed with seeded random sampling; beyond that the
// request is rejected.
enum class Tier { Exhaustive, Sampled };

struct TierError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::uint64_t exhaustive_cap() {
    if (const char* env = std::getenv("POLYFUS_SIZE_CAP")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1000000;
}

constexpr std::uint64_t kSampledCap = 100000000;

inline Tier pick_tier(std::uint64_t order) {
    if (order <= exhaustive_cap()) return Tier::Exhaustive;
    if (order <= kSampledCap) return Tier::Sampled;
    throw TierError("group order " + std::to_string(order) +
                    " exceeds the sampled-tier cap");
}

class Enumerator {
public:
    explicit Enumerator(const SGroup& S) : S_(S), q_(S.field().q()) {
        order_ = S.order();
    }

    const SGroup& group() const { return S_; }
    const Field& field() const { return S_.field(); }
    std::uint64_t order() const { return order_; }

    key_t pack(const SElement& s) const {
        key_t k = s.c;
        key_t w = q_;
        for (std::uint32_t i = 0; i < S_.dim(); ++i) {
            k += key_t(s.v[i]) * w;
            w *= q_;
        }
        return k;
    }

    SElement unpack(key_t k) const {
        SElement s{fel(k % q_), vec(S_.dim())};
        k /= q_;
        for (std::uint32_t i = 0; i < S_.dim(); ++i) {
            s.v[i] = fel(k % q_);
            k /= q_;
        }
        return s;
    }

    key_t identity() const { return 0; }
    key_t mul(key_t a, key_t b) const { return pack(S_.mul(unpack(a), unpack(b))); }
    key_t inv(key_t a) const { return pack(S_.inv(unpack(a))); }
    key_t conj(key_t a, key_t g) const { return pack(S_.conj(unpack(a), unpack(g))); }
    key_t comm(key_t a, key_t b) const { return pack(S_.comm(unpack(a), unpack(b))); }
    key_t pow(key_t a, std::uint64_t e) const { return pack(S_.pow(unpack(a), e)); }

    // standard generating set: the unipotent u_1 and an F_p-basis of the module
    std::vector<key_t> std_generators() const {
        const Field& F = field();
        std::vector<key_t> gens;
        gens.push_back(pack({F.one(), vec(S_.dim(), 0)}));
        for (std::uint32_t i = 0; i < S_.dim(); ++i)
            for (std::uint32_t j = 0; j < F.m(); ++j) {
                SElement s{0, vec(S_.dim(), 0)};
                vec coeff(F.m(), 0);
                coeff[j] = 1;
                s.v[i] = F.from_coeffs(coeff);
                gens.push_back(pack(s));
            }
        return gens;
    }

    Subgroup whole_group() const {
        require_exhaustive();
        Subgroup G;
        G.elems.resize(order_);
        for (key_t k = 0; k < order_; ++k) G.elems[k] = k;
        return G;
    }

    // the module (translation) subgroup: keys with zero unipotent digit
    Subgroup module_subgroup() const {
        require_exhaustive();
        Subgroup V;
        V.elems.reserve(order_ / q_);
        for (key_t k = 0; k < order_; k += q_) V.elems.push_back(k);
        return V;
    }

    // module elements supported on the given coordinate window [lo, hi]
    Subgroup module_span(std::uint32_t lo, std::uint32_t hi) const {
        std::vector<std::uint32_t> coords;
        for (std::uint32_t i = lo; i <= hi && i < S_.dim(); ++i) coords.push_back(i);
        return module_span_coords(coords);
    }

    Subgroup module_span_coords(const std::vector<std::uint32_t>& coords) const {
        Subgroup out;
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < coords.size(); ++i) count *= q_;
        out.elems.reserve(count);
        std::vector<std::uint32_t> digits(coords.size(), 0);
        for (;;) {
            SElement s{0, vec(S_.dim(), 0)};
            for (std::size_t i = 0; i < coords.size(); ++i) s.v[coords[i]] = digits[i];
            out.elems.push_back(pack(s));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == q_) digits[i++] = 0;
            if (i == digits.size()) break;
        }
        std::sort(out.elems.begin(), out.elems.end());
        return out;
    }

    Subgroup closure(const std::vector<key_t>& seeds) const {
        std::unordered_set<key_t> seen = {identity()};
        std::vector<key_t> frontier = {identity()};
        // generator set closed under inverses
        std::vector<key_t> gens;
        for (key_t s : seeds) {
            gens.push_back(s);
            gens.push_back(inv(s));
        }
        while (!frontier.empty()) {
            key_t cur = frontier.back();
            frontier.pop_back();
            for (key_t g : gens) {
                key_t nxt = mul(cur, g);
                if (seen.insert(nxt).second) frontier.push_back(nxt);
            }
        }
        Subgroup out;
        out.elems.assign(seen.begin(), seen.end());
        std::sort(out.elems.begin(), out.elems.end());
        return out;
    }

    // smallest subgroup containing the seeds and closed under conjugation by
    // the standard generators
    Subgroup normal_closure(const std::vector<key_t>& seeds) const {
        std::vector<key_t> cur = seeds;
        Subgroup H = closure(cur);
        for (;;) {
            std::vector<key_t> extra;
            for (key_t g : std_generators())
                for (key_t h : H.elems) {
                    key_t c = conj(h, g);
                    if (!H.contains(c)) extra.push_back(c);
                }
            if (extra.empty()) return H;
            cur.insert(cur.end(), extra.begin(), extra.end());
            H = closure(cur);
        }
    }

    // [A, B] as a subgroup (normal closure of elementary commutators)
    Subgroup commutator_subgroup(const Subgroup& A, const Subgroup& B) const {
        std::vector<key_t> seeds;
        std::unordered_set<key_t> dedup;
        for (key_t a : A.elems)
            for (key_t b : B.elems) {
                key_t c = comm(a, b);
                if (c != identity() && dedup.insert(c).second) seeds.push_back(c);
            }
        if (seeds.empty()) return Subgroup{{identity()}};
        return normal_closure(seeds);
    }

    // [A, S] without enumerating all of S: commutators with the standard
    // generators, then normal closure
    Subgroup commutator_with_group(const Subgroup& A) const {
        std::vector<key_t> seeds;
        std::unordered_set<key_t> dedup;
        for (key_t a : A.elems)
            for (key_t g : std_generators()) {
                key_t c = comm(a, g);
                if (c != identity() && dedup.insert(c).second) seeds.push_back(c);
            }
        if (seeds.empty()) return Subgroup{{identity()}};
        return normal_closure(seeds);
    }

    Subgroup centre() const {
        require_exhaustive();
        Subgroup Z;
        auto gens = std_generators();
        for (key_t k = 0; k < order_; ++k) {
            bool central = true;
            for (key_t g : gens)
                if (comm(k, g) != identity()) { central = false; break; }
            if (central) Z.elems.push_back(k);
        }
        return Z;
    }

    // Z_0 = 1 <= Z_1 <= ... <= Z_c = S (ascending)
    std::vector<Subgroup> upper_central_series() const {
        require_exhaustive();
        std::vector<Subgroup> series = {Subgroup{{identity()}}};
        auto gens = std_generators();
        while (series.back().size() < order_) {
            const Subgroup& prev = series.back();
            Subgroup next;
            for (key_t k = 0; k < order_; ++k) {
                bool in = true;
                for (key_t g : gens)
                    if (!prev.contains(comm(k, g))) { in = false; break; }
                if (in) next.elems.push_back(k);
            }
            if (next.size() == series.back().size())
                throw std::logic_error("upper central series stalled");
            series.push_back(std::move(next));
        }
        return series;
    }

    // S = L_1 >= L_2 = [S,S] >= ... >= 1 (descending)
    std::vector<Subgroup> lower_central_series() const {
        require_exhaustive();
        std::vector<Subgroup> series = {whole_group()};
        while (series.back().size() > 1) {
            Subgroup next = commutator_with_group(series.back());
            if (next.size() == series.back().size())
                throw std::logic_error("lower central series stalled");
            series.push_back(std::move(next));
        }
        return series;
    }

    Subgroup derived_subgroup() const {
        require_exhaustive();
        return commutator_with_group(whole_group());
    }

    Subgroup intersect(const Subgroup& A, const Subgroup& B) const {
        Subgroup out;
        std::set_intersection(A.elems.begin(), A.elems.end(), B.elems.begin(),
                              B.elems.end(), std::back_inserter(out.elems));
        return out;
    }

    // the product set {a b : a in A, b in B} (a subgroup when one factor
    // normalizes the other)
    Subgroup product_set(const Subgroup& A, const Subgroup& B) const {
        std::unordered_set<key_t> seen;
        for (key_t a : A.elems)
            for (key_t b : B.elems) seen.insert(mul(a, b));
        Subgroup out;
        out.elems.assign(seen.begin(), seen.end());
        std::sort(out.elems.begin(), out.elems.end());
        return out;
    }

    bool normalizes(key_t g, const Subgroup& A) const {
        for (key_t a : A.elems)
            if (!A.contains(conj(a, g))) return false;
        return true;
    }

    bool centralizes(key_t g, const Subgroup& A) const {
        for (key_t a : A.elems)
            if (comm(a, g) != identity()) return false;
        return true;
    }

    Subgroup centralizer_in(const Subgroup& domain, const Subgroup& of) const {
        Subgroup out;
        for (key_t g : domain.elems)
            if (centralizes(g, of)) out.elems.push_back(g);
        return out;
    }

    Subgroup normalizer_in(const Subgroup& domain, const Subgroup& of) const {
        Subgroup out;
        for (key_t g : domain.elems)
            if (normalizes(g, of)) out.elems.push_back(g);
        return out;
    }

    Subgroup centre_of(const Subgroup& A) const { return centralizer_in(A, A); }

    bool is_abelian(const Subgroup& A) const {
        for (std::size_t i = 0; i < A.elems.size(); ++i)
            for (std::size_t j = i + 1; j < A.elems.size(); ++j)
                if (comm(A.elems[i], A.elems[j]) != identity()) return false;
        return true;
    }

    std::uint64_t element_order(key_t a) const {
        // orders are powers of p in these groups
        std::uint64_t p = field().p(), o = 1;
        key_t cur = a;
        while (cur != identity()) {
            cur = pow(cur, p);
            o *= p;
            if (o > p * p * p) throw std::logic_error("element order exceeds p^3");
        }
        return o;
    }

    std::uint64_t exponent_of(const Subgroup& A) const {
        std::uint64_t e = 1;
        for (key_t a : A.elems) e = std::max(e, element_order(a));
        return e;
    }

    // the set of p-th powers of A (sorted; not necessarily a subgroup)
    std::vector<key_t> pth_power_set(const Subgroup& A) const {
        std::unordered_set<key_t> seen;
        for (key_t a : A.elems) seen.insert(pow(a, field().p()));
        std::vector<key_t> out(seen.begin(), seen.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    Subgroup conjugate_subgroup(const Subgroup& A, key_t g) const {
        Subgroup out;
        out.elems.reserve(A.size());
        for (key_t a : A.elems) out.elems.push_back(conj(a, g));
        std::sort(out.elems.begin(), out.elems.end());
        return out;
    }

    // orbit of a subgroup under conjugation by the whole group, computed by
    // generator BFS; returns the distinct conjugates
    std::vector<Subgroup> subgroup_orbit(const Subgroup& A) const {
        struct VecHash {
            std::size_t operator()(const std::vector<key_t>& v) const {
                std::size_t h = v.size();
                for (key_t k : v) h = h * 1000003911u + std::size_t(k ^ (k >> 29));
                return h;
            }
        };
        std::unordered_set<std::vector<key_t>, VecHash> seen;
        std::vector<Subgroup> orbit = {A};
        seen.insert(A.elems);
        std::vector<std::size_t> frontier = {0};
        auto gens = std_generators();
        while (!frontier.empty()) {
            std::size_t idx = frontier.back();
            frontier.pop_back();
            Subgroup cur = orbit[idx];
            for (key_t g : gens) {
                Subgroup nxt = conjugate_subgroup(cur, g);
                if (seen.insert(nxt.elems).second) {
                    orbit.push_back(nxt);
                    frontier.push_back(orbit.size() - 1);
                }
            }
        }
        return orbit;
    }

    // seeded random element (uniform over the whole group)
    key_t random_element(std::mt19937_64& eng) const {
        return std::uniform_int_distribution<key_t>(0, order_ - 1)(eng);
    }

private:
    void require_exhaustive() const {
        if (pick_tier(order_) != Tier::Exhaustive)
            throw TierError("operation requires exhaustive tier (|S| = " +
                            std::to_string(order_) + ")");
    }

    const SGroup& S_;
    std::uint64_t q_, order_;
};

}  // namespace polyfus
