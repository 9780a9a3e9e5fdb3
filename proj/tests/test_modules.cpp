#include <catch2/catch_amalgamated.hpp>

#include "polyfus/field.hpp"
#include "polyfus/modules.hpp"

#include <cstdint>
#include <random>

using namespace polyfus;

namespace {

// deterministic pseudo-random field element / matrix helpers for the tests
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    fel element(const Field& F) {
        return fel(std::uniform_int_distribution<std::uint64_t>(0, F.q() - 1)(eng));
    }
    fel unit(const Field& F) {
        return fel(std::uniform_int_distribution<std::uint64_t>(1, F.q() - 1)(eng));
    }
    Mat2 gl2(const Field& F) {
        for (;;) {
            Mat2 M{element(F), element(F), element(F), element(F)};
            if (mat2_det(F, M) != F.zero()) return M;
        }
    }
    Mat2 borel(const Field& F) {  // lower triangular, invertible
        return {unit(F), F.zero(), element(F), unit(F)};
    }
    vec vector(const Field& F, std::size_t n) {
        vec v(n);
        for (auto& x : v) x = element(F);
        return v;
    }
};

std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    // Lucas' theorem
    std::uint64_t out = 1;
    while (n || k) {
        std::uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        // small factorial ratio mod p
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t t = 0; t < ki; ++t) {
            num = num * ((ni - t) % p) % p;
            den = den * ((t + 1) % p) % p;
        }
        std::uint64_t dinv = 1, base = den;
        for (std::uint64_t e = p - 2; e; e >>= 1) {
            if (e & 1) dinv = dinv * base % p;
            base = base * base % p;
        }
        out = out * num % p * dinv % p;
        n /= p;
        k /= p;
    }
    return out;
}

}  // namespace

TEST_CASE("unipotent substitution matrix has binomial lower-triangular form") {
    Field F(3, 2);
    const std::uint32_t n = 3;
    for (fel c = 0; c < F.q(); ++c) {
        Mat2 u{F.one(), F.zero(), c, F.one()};
        MatN R = rho_vn(F, n, u);
        for (std::uint32_t i = 0; i <= n; ++i)
            for (std::uint32_t j = 0; j <= n; ++j) {
                fel want = F.zero();
                if (j <= i) {
                    fel b = F.embed(binom_mod_p(i, j, F.p()));
                    want = F.mul(b, F.pow(c, std::int64_t(i - j)));
                }
                INFO("c=" << c << " i=" << i << " j=" << j);
                CHECK(R[i][j] == want);
            }
    }
}

TEST_CASE("rho_vn is multiplicative and rho_lambda is its contragredient") {
    Rng rng(11);
    for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {5, 1}, {5, 2}}) {
        Field F(p, m);
        for (std::uint32_t n : {std::uint32_t(1), std::uint32_t(2), p}) {
            for (int trial = 0; trial < 20; ++trial) {
                Mat2 A = rng.gl2(F), B = rng.gl2(F);
                CHECK(matn_mul(F, rho_vn(F, n, A), rho_vn(F, n, B)) ==
                      rho_vn(F, n, mat2_mul(F, A, B)));
            }
        }
        for (int trial = 0; trial < 20; ++trial) {
            Mat2 A = rng.gl2(F), B = rng.gl2(F);
            CHECK(matn_mul(F, rho_lambda(F, p, A), rho_lambda(F, p, B)) ==
                  rho_lambda(F, p, mat2_mul(F, A, B)));
        }
    }
}

TEST_CASE("pairing between V_p and Lambda is invariant up to Frobenius") {
    Rng rng(12);
    for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {5, 2}}) {
        Field F(p, m);
        for (int trial = 0; trial < 60; ++trial) {
            vec v = rng.vector(F, p + 1);
            vec eta = rng.vector(F, p + 1);
            std::uint32_t e = std::uint32_t(trial) % m;
            fel theta = rng.unit(F);
            Mat2 M = rng.gl2(F);
            fel lhs = pair_vl(F, act_vn(F, p, v, e, theta, M),
                              act_lambda(F, p, eta, e, theta, M));
            CHECK(lhs == F.frob(pair_vl(F, v, eta), e));
        }
    }
}

TEST_CASE("diagonal scalars act on Lambda by inverse powers") {
    Field F(3, 2);
    const std::uint32_t p = 3;
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        fel lam = rng.unit(F), theta = rng.unit(F);
        Mat2 D{lam, F.zero(), F.zero(), F.one()};
        for (std::uint32_t i = 0; i <= p; ++i) {
            vec e(p + 1, 0);
            e[i] = F.one();
            vec img = act_lambda(F, p, e, 0, theta, D);
            // coordinate i scales by theta^-1 lam^(i-p)
            fel want = F.mul(F.inv(theta), F.pow(lam, std::int64_t(i) - std::int64_t(p)));
            for (std::uint32_t j = 0; j <= p; ++j)
                CHECK(img[j] == (j == i ? want : F.zero()));
        }
    }
}

TEST_CASE("Borel action on the bottom weight slice of Lambda matches the closed form") {
    // For eta = lam*e_p + mu*e_(p-1) + nu*e_(p-2) and g = (0, Pi, [[alpha,0],[kappa,beta]]):
    //   lam' = Pi^-1 beta^-p lam
    //   mu'  = Pi^-1 alpha^-1 beta^(1-p) mu + Pi^-1 kappa alpha^-2 beta^(1-p) nu
    //   nu'  = Pi^-1 alpha^-2 beta^(2-p) nu
    Rng rng(14);
    for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {5, 2}, {3, 3}}) {
        Field F(p, m);
        for (int trial = 0; trial < 50; ++trial) {
            fel Pi = rng.unit(F), alpha = rng.unit(F), beta = rng.unit(F);
            fel kappa = rng.element(F);
            fel lam = rng.element(F), mu = rng.element(F), nu = rng.element(F);
            vec eta(p + 1, 0);
            eta[p] = lam;
            eta[p - 1] = mu;
            eta[p - 2] = nu;
            Mat2 M{alpha, F.zero(), kappa, beta};
            vec img = act_lambda(F, p, eta, 0, Pi, M);
            fel Pi1 = F.inv(Pi);
            fel lamW = F.mul(Pi1, F.mul(F.pow(beta, -std::int64_t(p)), lam));
            fel muW = F.add(
                F.mul(F.mul(Pi1, F.mul(F.inv(alpha), F.pow(beta, 1 - std::int64_t(p)))), mu),
                F.mul(F.mul(Pi1, F.mul(kappa, F.mul(F.pow(alpha, -2),
                                                    F.pow(beta, 1 - std::int64_t(p))))), nu));
            fel nuW = F.mul(F.mul(Pi1, F.mul(F.pow(alpha, -2),
                                             F.pow(beta, 2 - std::int64_t(p)))), nu);
            CHECK(img[p] == lamW);
            CHECK(img[p - 1] == muW);
            CHECK(img[p - 2] == nuW);
            for (std::uint32_t j = 0; j + 2 < p; ++j) CHECK(img[j] == F.zero());
        }
    }
}

TEST_CASE("gamma linear part: kernel and image") {
    Field F(5, 1);
    const std::uint32_t n = 3;
    vec xn(n + 1, 0);
    xn[0] = F.one();  // x^n
    CHECK(vec_is_zero(gamma_lin(F, n, xn)));
    // surjective: images of the basis span V_(n-1)
    MatN img;
    for (std::uint32_t i = 0; i <= n; ++i) {
        vec e(n + 1, 0);
        e[i] = F.one();
        img.push_back(gamma_lin(F, n, e));
    }
    CHECK(matn_rank(F, img) == n);
}

TEST_CASE("lambda quotient linear part reverses and truncates") {
    Field F(3, 2);
    const std::uint32_t p = 3;
    vec eta = {5, 7, 2, 8};
    CHECK(lambda_quot_lin(F, p, eta) == vec{2, 7, 5});
    // kernel = top line e_p
    vec top(p + 1, 0);
    top[p] = F.primitive();
    CHECK(vec_is_zero(lambda_quot_lin(F, p, top)));
}

TEST_CASE("lambda quotient intertwines the unipotent actions") {
    for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {5, 1}, {5, 2}}) {
        Field F(p, m);
        Rng rng(15);
        for (fel c = 0; c < F.q(); ++c) {
            Mat2 u{F.one(), F.zero(), c, F.one()};
            for (int trial = 0; trial < 12; ++trial) {
                vec eta = rng.vector(F, p + 1);
                vec lhs = lambda_quot_lin(F, p, act_lambda(F, p, eta, 0, F.one(), u));
                vec rhs = act_vn(F, p - 1, lambda_quot_lin(F, p, eta), 0, F.one(), u);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("psi is a surjection with kernel <x^p, y^p> and commutes with SL2") {
    Rng rng(16);
    for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {5, 1}, {5, 2}}) {
        Field F(p, m);
        vec xp(p + 1, 0), yp(p + 1, 0);
        xp[0] = F.one();
        yp[p] = rng.unit(F);
        CHECK(vec_is_zero(psi_lin(F, p, xp)));
        CHECK(vec_is_zero(psi_lin(F, p, yp)));
        MatN img;
        for (std::uint32_t i = 0; i <= p; ++i) {
            vec e(p + 1, 0);
            e[i] = F.one();
            img.push_back(psi_lin(F, p, e));
        }
        CHECK(matn_rank(F, img) == p - 1);

        // SL2 generated by the two displayed generators; check equivariance on
        // them and on random products
        fel th = F.primitive();
        Mat2 g1{F.one(), F.zero(), F.one(), F.one()};
        Mat2 g2{F.zero(), th, F.neg(F.inv(th)), F.zero()};
        std::vector<Mat2> Ms = {g1, g2};
        for (int i = 0; i < 8; ++i)
            Ms.push_back(mat2_mul(F, Ms[std::size_t(rng.eng() % Ms.size())],
                                  (rng.eng() & 1) ? g1 : g2));
        for (const Mat2& M : Ms) {
            CHECK(mat2_det(F, M) == F.one());
            for (int trial = 0; trial < 15; ++trial) {
                vec v = rng.vector(F, p + 1);
                CHECK(psi_lin(F, p, act_vn(F, p, v, 0, F.one(), M)) ==
                      act_vn(F, p - 2, psi_lin(F, p, v), 0, F.one(), M));
            }
        }
    }
}

TEST_CASE("Jordan profiles of the unipotent generator") {
    using Profile = std::vector<std::pair<std::size_t, std::size_t>>;
    for (auto [p, m] : {std::pair<std::uint32_t, std::uint32_t>{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}}) {
        Field F(p, m);
        Mat2 u{F.one(), F.zero(), F.one(), F.one()};
        for (std::uint32_t n = 1; n < p; ++n) {
            INFO("V_" << n << "(" << F.q() << ")");
            CHECK(jordan_profile(F, rho_vn(F, n, u)) == Profile{{n + 1, 1}});
        }
        INFO("Lambda(" << F.q() << ")");
        CHECK(jordan_profile(F, rho_lambda(F, p, u)) == Profile{{1, 1}, {p, 1}});
    }
}

TEST_CASE("matrix inverse round-trips") {
    Field F(3, 2);
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        MatN A = rho_vn(F, 3, rng.gl2(F));
        CHECK(matn_mul(F, A, matn_inv(F, A)) == matn_identity(F, 4));
    }
    MatN sing(2, vec(2, 0));
    CHECK_THROWS_AS(matn_inv(F, sing), std::domain_error);
}
