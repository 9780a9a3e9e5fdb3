#pragma once

// Finite field arithmetic GF(p^m) with a deterministic choice of modulus and
// primitive element, plus the Frobenius maps used throughout the library.
//
// Elements are stored as integer codes: the element sum_i a_i * t^i (t a root
// of the modulus, 0 <= a_i < p) has code sum_i a_i * p^i, so the constant
// coefficient is the least significant base-p digit.  The modulus is the monic
// irreducible of degree m whose code (of its lower coefficients) is least, and
// the primitive element is the generator of K* with least code.  Both scans
// are deterministic, so two runs -- or two machines -- agree on every code.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyfus {

using fel = std::uint32_t;  // field element code in [0, q)

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, constant coefficient first.  Only used for the
// modulus search and the generic (untabulated) multiplication path.
struct PolyFp {
    static std::vector<std::uint32_t> trim(std::vector<std::uint32_t> a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
        return a;
    }

    static std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a,
                                          const std::vector<std::uint32_t>& b,
                                          std::uint64_t p) {
        if (a.empty() || b.empty()) return {};
        std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
        std::vector<std::uint32_t> out(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i)
            out[i] = std::uint32_t(acc[i]);
        return trim(out);
    }

    // a mod f, f monic.
    static std::vector<std::uint32_t> mod(std::vector<std::uint32_t> a,
                                          const std::vector<std::uint32_t>& f,
                                          std::uint64_t p) {
        a = trim(std::move(a));
        const std::size_t df = f.size() - 1;
        while (a.size() > df) {
            const std::uint64_t lead = a.back();
            const std::size_t shift = a.size() - 1 - df;
            for (std::size_t i = 0; i < f.size(); ++i) {
                std::uint64_t sub = (lead * f[i]) % p;
                std::uint64_t cur = a[shift + i];
                a[shift + i] = std::uint32_t((cur + p - sub) % p);
            }
            a = trim(std::move(a));
            if (a.empty()) break;
        }
        return a;
    }

    static std::vector<std::uint32_t> powmod_x(std::uint64_t e,
                                               const std::vector<std::uint32_t>& f,
                                               std::uint64_t p) {
        // x^e mod f by square-and-multiply.
        std::vector<std::uint32_t> base = mod({0, 1}, f, p);
        std::vector<std::uint32_t> acc = {1};
        while (e) {
            if (e & 1) acc = mod(mul(acc, base, p), f, p);
            base = mod(mul(base, base, p), f, p);
            e >>= 1;
        }
        return acc;
    }

    static std::vector<std::uint32_t> gcd(std::vector<std::uint32_t> a,
                                          std::vector<std::uint32_t> b,
                                          std::uint64_t p) {
        a = trim(std::move(a));
        b = trim(std::move(b));
        while (!b.empty()) {
            // make b monic for mod()
            std::uint64_t lead = b.back();
            std::uint64_t inv = 1, base = lead, e = p - 2;
            while (e) {  // lead^(p-2) mod p
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            std::vector<std::uint32_t> bm(b.size());
            for (std::size_t i = 0; i < b.size(); ++i)
                bm[i] = std::uint32_t(std::uint64_t(b[i]) * inv % p);
            auto r = mod(a, bm, p);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace detail

class Field {
public:
    Field(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
        if (!detail::is_prime_u64(p)) throw std::invalid_argument("p must be prime");
        if (m == 0) throw std::invalid_argument("m must be positive");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > (std::uint64_t(1) << 32))
                throw std::invalid_argument("p^m exceeds 2^32");
        }
        q_ = q;
        find_modulus();
        if (q_ <= kTableLimit) build_tables();
        primitive_ = find_primitive();
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    fel zero() const { return 0; }
    fel one() const { return 1; }
    fel primitive() const { return primitive_; }

    // Lower coefficients of the monic modulus, constant first (length m; the
    // leading coefficient 1 is implicit).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool operator==(const Field& o) const { return p_ == o.p_ && m_ == o.m_; }

    std::vector<std::uint32_t> coeffs(fel a) const {
        std::vector<std::uint32_t> c(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        return c;
    }

    fel from_coeffs(const std::vector<std::uint32_t>& c) const {
        if (c.size() != m_) throw std::invalid_argument("coefficient count != m");
        std::uint64_t code = 0, w = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
            code += std::uint64_t(c[i]) * w;
            w *= p_;
        }
        return fel(code);
    }

    fel embed(std::uint64_t r) const { return fel(r % p_); }  // F_p -> K

    fel add(fel a, fel b) const {
        // digitwise mod-p addition of the base-p codes
        std::uint64_t out = 0, w = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            out += std::uint64_t((a % p_ + b % p_) % p_) * w;
            a /= p_;
            b /= p_;
            w *= p_;
        }
        return fel(out);
    }

    fel neg(fel a) const {
        std::uint64_t out = 0, w = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint32_t d = a % p_;
            out += std::uint64_t(d ? p_ - d : 0) * w;
            a /= p_;
            w *= p_;
        }
        return fel(out);
    }

    fel sub(fel a, fel b) const { return add(a, neg(b)); }

    fel mul(fel a, fel b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) {
            std::uint64_t s = std::uint64_t(log_[a]) + log_[b];
            if (s >= q_ - 1) s -= q_ - 1;
            return exp_[s];
        }
        return mul_generic(a, b);
    }

    fel inv(fel a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        if (!log_.empty())
            return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
        return pow(a, std::int64_t(q_) - 2);
    }

    fel div(fel a, fel b) const { return mul(a, inv(b)); }

    fel pow(fel a, std::int64_t e) const {
        if (a == 0) {
            if (e < 0) throw std::domain_error("inverse of zero");
            return e == 0 ? one() : zero();
        }
        std::uint64_t mod = q_ - 1;
        std::uint64_t ee = std::uint64_t(((e % std::int64_t(mod)) + std::int64_t(mod)) % std::int64_t(mod));
        if (!log_.empty())
            return exp_[(std::uint64_t(log_[a]) * (ee % mod)) % mod];
        fel acc = one(), base = a;
        while (ee) {
            if (ee & 1) acc = mul_generic(acc, base);
            base = mul_generic(base, base);
            ee >>= 1;
        }
        return acc;
    }

    // a |-> a^(p^k); k may exceed m (reduced mod m since Frobenius has order m)
    fel frob(fel a, std::uint32_t k) const {
        k %= m_;
        if (k == 0 || a == 0) return a;
        std::uint64_t e = 1;
        for (std::uint32_t i = 0; i < k; ++i) e = (e * p_) % (q_ - 1);
        return pow(a, std::int64_t(e));
    }

    // multiplicative order (0 input is an error)
    std::uint64_t order(fel a) const {
        if (a == 0) throw std::domain_error("order of zero");
        std::uint64_t ord = q_ - 1;
        for (std::uint64_t r : detail::prime_factors(q_ - 1))
            while (ord % r == 0 && pow(a, std::int64_t(ord / r)) == one())
                ord /= r;
        return ord;
    }

    std::string describe(fel a) const {
        // human-readable polynomial in t, constant first omitted when zero
        auto c = coeffs(a);
        std::string s;
        for (std::uint32_t i = 0; i < m_; ++i) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
            if (i >= 1) {
                if (c[i] != 1) s += "*";
                s += "t";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    static constexpr std::uint64_t kTableLimit = 1u << 20;

    void find_modulus() {
        if (m_ == 1) {
            modulus_ = {0};  // modulus x - 0?  degree 1: x + 0 ... x itself is
            // not valid (not coprime to x); the least monic irreducible of
            // degree 1 by code is x + 0 = x, which is irreducible but makes t
            // = 0.  For m = 1 arithmetic never consults the modulus; record
            // x (code 0) as the canonical degree-1 choice.
            return;
        }
        // scan codes of the lower coefficients upward
        for (std::uint64_t code = 0; code < q_; ++code) {
            std::vector<std::uint32_t> f(m_ + 1);
            std::uint64_t c = code;
            for (std::uint32_t i = 0; i < m_; ++i) {
                f[i] = c % p_;
                c /= p_;
            }
            f[m_] = 1;
            if (irreducible(f)) {
                modulus_.assign(f.begin(), f.end() - 1);
                return;
            }
        }
        throw std::logic_error("no irreducible modulus found");
    }

    bool irreducible(const std::vector<std::uint32_t>& f) const {
        // f monic of degree m over F_p: irreducible iff x^(p^m) == x (mod f)
        // and gcd(x^(p^(m/r)) - x, f) = 1 for every prime r | m.
        using P = detail::PolyFp;
        std::uint64_t pm = 1;
        for (std::uint32_t i = 0; i < m_; ++i) pm *= p_;
        auto xq = P::powmod_x(pm, f, p_);
        auto x1 = P::mod({0, 1}, f, p_);
        if (xq != x1) return false;
        for (std::uint64_t r : detail::prime_factors(m_)) {
            std::uint64_t e = 1;
            for (std::uint32_t i = 0; i < m_ / r; ++i) e *= p_;
            auto xe = P::powmod_x(e, f, p_);
            // xe - x
            std::vector<std::uint32_t> d = xe;
            if (d.size() < 2) d.resize(2, 0);
            d[1] = std::uint32_t((std::uint64_t(d[1]) + p_ - 1) % p_);
            d = P::trim(std::move(d));
            auto g = P::gcd(d, f, p_);
            if (!(g.size() == 1))  // nonconstant gcd => reducible
                return false;
        }
        return true;
    }

    fel mul_generic(fel a, fel b) const {
        if (m_ == 1) return fel(std::uint64_t(a) * b % p_);
        auto ca = coeffs(a), cb = coeffs(b);
        std::vector<std::uint32_t> prod = detail::PolyFp::mul(ca, cb, p_);
        std::vector<std::uint32_t> f(modulus_.begin(), modulus_.end());
        f.push_back(1);
        auto r = detail::PolyFp::mod(std::move(prod), f, p_);
        r.resize(m_, 0);
        return from_coeffs(r);
    }

    void build_tables() {
        // find a generator by scanning codes, using generic arithmetic
        std::vector<std::uint64_t> fac = detail::prime_factors(q_ - 1);
        fel g = 0;
        for (std::uint64_t cand = 1; cand < q_; ++cand) {
            fel a = fel(cand);
            bool ok = true;
            for (std::uint64_t r : fac) {
                // a^((q-1)/r) via generic pow
                std::uint64_t e = (q_ - 1) / r;
                fel acc = one(), base = a;
                while (e) {
                    if (e & 1) acc = mul_generic(acc, base);
                    base = mul_generic(base, base);
                    e >>= 1;
                }
                if (acc == one()) { ok = false; break; }
            }
            if (ok) { g = a; break; }
        }
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        fel cur = one();
        for (std::uint64_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = cur;
            log_[cur] = std::uint32_t(i);
            cur = mul_generic(cur, g);
        }
        table_gen_ = g;
    }

    fel find_primitive() const {
        if (!log_.empty()) return table_gen_;  // scan in build_tables() was by code
        std::vector<std::uint64_t> fac = detail::prime_factors(q_ - 1);
        for (std::uint64_t cand = 1; cand < q_; ++cand) {
            fel a = fel(cand);
            bool ok = true;
            for (std::uint64_t r : fac)
                if (pow(a, std::int64_t((q_ - 1) / r)) == one()) { ok = false; break; }
            if (ok) return a;
        }
        throw std::logic_error("no primitive element found");
    }

    std::uint32_t p_, m_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<fel> exp_;
    std::vector<std::uint32_t> log_;
    fel table_gen_ = 0;
    fel primitive_ = 0;
};

}  // namespace polyfus
