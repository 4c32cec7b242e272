#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "gb/norms.hpp"
#include "gb/switching_game.hpp"
#include "support/oracles.hpp"

using gb::DenseMatrix;
using gb::SignMatrix;
using gb::SignTensor;

TEST_CASE("spectral norm of tiny known matrices") {
    DenseMatrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.at(i, i) = 1;
    REQUIRE(gb::spectral_norm(id3) == Catch::Approx(1.0).margin(1e-12));

    REQUIRE(gb::spectral_norm(DenseMatrix::from_sign(gb::sylvester(2))) ==
            Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("spectral norm of Hadamard matrices is sqrt(n)") {
    for (unsigned t : {0u, 1u, 2u, 3u, 4u, 5u, 6u}) {
        const double n = std::pow(2.0, t);
        const double s =
            gb::spectral_norm(DenseMatrix::from_sign(gb::sylvester(t)));
        REQUIRE(std::abs(s - std::sqrt(n)) <= 1e-9);
    }
}

TEST_CASE("spectral norm of truncations stays within sqrt(order)") {
    for (long long order : {4, 8, 12, 16, 20}) {
        const SignMatrix h = gb::construct_hadamard(order);
        for (std::size_t n = 1; n <= static_cast<std::size_t>(order); ++n) {
            const DenseMatrix a = DenseMatrix::from_sign(h.leading_block(n, n));
            const double s = gb::spectral_norm(a);
            REQUIRE(s <= std::sqrt(static_cast<double>(order)) + 1e-9);
            REQUIRE(s == Catch::Approx(oracle::jacobi_spectral_norm(a)).margin(1e-8));
        }
    }
}

TEST_CASE("the 15x15 truncation of the order-16 matrix has norm exactly 4") {
    const DenseMatrix a =
        DenseMatrix::from_sign(gb::sylvester(4).leading_block(15, 15));
    REQUIRE(gb::spectral_norm(a) == Catch::Approx(4.0).margin(1e-9));
    REQUIRE(oracle::jacobi_spectral_norm(a) == Catch::Approx(4.0).margin(1e-9));
}

TEST_CASE("spectral norm agrees with the Jacobi oracle on random matrices") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t r = 1 + rng() % 10, c = 1 + rng() % 10;
        const DenseMatrix a =
            DenseMatrix::from_sign(oracle::random_sign_matrix(rng, r, c));
        REQUIRE(gb::spectral_norm(a) ==
                Catch::Approx(oracle::jacobi_spectral_norm(a)).margin(1e-8));
    }
}

TEST_CASE("spectral norm rejects bad input") {
    DenseMatrix z(2, 2);
    REQUIRE_THROWS_AS(gb::spectral_norm(z), gb::UnsupportedParameterError);
    DenseMatrix ok(1, 1);
    ok.at(0, 0) = 1;
    REQUIRE_THROWS_AS(gb::spectral_norm(ok, 0.0), gb::UnsupportedParameterError);
    DenseMatrix inf(1, 1);
    inf.at(0, 0) = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(gb::spectral_norm(inf), gb::UnsupportedParameterError);
}

TEST_CASE("SignTensor shape checks") {
    REQUIRE_THROWS_AS(SignTensor({4}, std::vector<std::int8_t>(4, 1)),
                      gb::ShapeError);
    REQUIRE_THROWS_AS(SignTensor({2, 2}, std::vector<std::int8_t>(3, 1)),
                      gb::ShapeError);
    REQUIRE_THROWS_AS(SignTensor({2, 2}, {1, 1, 2, 1}), gb::ShapeError);
    const SignTensor t({2, 3}, std::vector<std::int8_t>(6, 1));
    REQUIRE(t.order() == 2);
    REQUIRE(t.at({1, 2}) == 1);
    REQUIRE_THROWS_AS(t.at({2, 0}), gb::ShapeError);
}

TEST_CASE("ksz_tensor entries are products of matrix entries") {
    const SignMatrix h2 = gb::sylvester(1);
    const SignTensor t2 = gb::ksz_tensor({h2}, {2, 2});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            REQUIRE(t2.at({i, j}) == h2.at(i, j));

    const SignTensor t3 = gb::ksz_tensor({h2, h2}, {2, 2, 2});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                REQUIRE(t3.at({i, j, k}) == h2.at(i, j) * h2.at(j, k));

    const SignMatrix h4 = gb::sylvester(2);
    const SignTensor trunc = gb::ksz_tensor({h4, h4}, {3, 4, 4});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                REQUIRE(trunc.at({i, j, k}) == h4.at(i, j) * h4.at(j, k));
}

TEST_CASE("ksz_tensor rejects inconsistent input") {
    const SignMatrix h2 = gb::sylvester(1);
    const SignMatrix h4 = gb::sylvester(2);
    REQUIRE_THROWS_AS(gb::ksz_tensor({h2}, {2, 2, 2}), gb::ShapeError);
    REQUIRE_THROWS_AS(gb::ksz_tensor({h4, h4}, {4, 2, 4}), gb::ShapeError);
    REQUIRE_THROWS_AS(gb::ksz_tensor({h2, h2}, {2, 4, 4}), gb::ShapeError);
    REQUIRE_THROWS_AS(gb::ksz_tensor({SignMatrix(2, 2, +1)}, {2, 2}),
                      gb::UnsupportedParameterError);
}

TEST_CASE("mixed norm matches definitions") {
    const SignMatrix h2 = gb::sylvester(1);
    REQUIRE(gb::mixed_norm(gb::ksz_tensor({h2}, {2, 2})) ==
            Catch::Approx(std::sqrt(2.0)).margin(1e-9));

    const SignTensor all_plus({2, 2, 2}, std::vector<std::int8_t>(8, 1));
    REQUIRE(gb::mixed_norm(all_plus) == Catch::Approx(4.0).margin(1e-9));
    REQUIRE(oracle::mixed_norm_brute(all_plus) == Catch::Approx(4.0).margin(1e-9));

    std::mt19937 rng(53);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> dims = {1 + rng() % 3, 1 + rng() % 3, 0};
        if (dims[0] > dims[1]) std::swap(dims[0], dims[1]);
        dims[2] = dims[1] + rng() % 2;
        std::size_t size = dims[0] * dims[1] * dims[2];
        std::vector<std::int8_t> e(size);
        for (auto& v : e) v = coin(rng) ? 1 : -1;
        const SignTensor t(dims, e);
        REQUIRE(gb::mixed_norm(t) ==
                Catch::Approx(oracle::mixed_norm_brute(t)).margin(1e-8));
    }
}

TEST_CASE("mixed norm of Hadamard tensors meets the truncation bound") {
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto c = gb::constructible_order_at_least(n);
        const SignTensor t =
            gb::ksz_tensor({c.matrix, c.matrix}, {n, n, n});
        REQUIRE(gb::mixed_norm(t) <= static_cast<double>(c.order) + 1e-6);
    }
}

TEST_CASE("injective norm matches solve_g for matrices") {
    const SignMatrix h4 = gb::sylvester(2);
    const SignTensor t({4, 4},
                       [&] {
                           std::vector<std::int8_t> e;
                           for (std::size_t i = 0; i < 4; ++i)
                               for (std::size_t j = 0; j < 4; ++j)
                                   e.push_back(static_cast<std::int8_t>(h4.at(i, j)));
                           return e;
                       }());
    REQUIRE(gb::injective_inf_norm(t) == 8);

    std::mt19937 rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const SignMatrix m = oracle::random_sign_matrix(rng, n, n);
        std::vector<std::int8_t> e;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                e.push_back(static_cast<std::int8_t>(m.at(i, j)));
        const SignTensor t2({n, n}, e);
        REQUIRE(gb::injective_inf_norm(t2) ==
                gb::solve_g(gb::LightGrid(m)).value);
    }
}

TEST_CASE("injective norm for small tensors") {
    const SignTensor all_plus({2, 2, 2}, std::vector<std::int8_t>(8, 1));
    REQUIRE(gb::injective_inf_norm(all_plus) == 8);
    REQUIRE(oracle::injective_inf_norm_brute(all_plus) == 8);

    std::mt19937 rng(61);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 15; ++trial) {
        const std::vector<std::size_t> dims = {1 + rng() % 2, 1 + rng() % 3,
                                               2 + rng() % 2};
        std::size_t size = dims[0] * dims[1] * dims[2];
        std::vector<std::int8_t> e(size);
        for (auto& v : e) v = coin(rng) ? 1 : -1;
        const SignTensor t(dims, e);
        REQUIRE(gb::injective_inf_norm(t) == oracle::injective_inf_norm_brute(t));
    }
}

TEST_CASE("injective norm respects the mixed-norm comparison") {
    const SignMatrix h4 = gb::sylvester(2);
    for (std::size_t n = 2; n <= 4; ++n) {
        const SignTensor t = gb::ksz_tensor({h4, h4}, {n, n, n});
        const double mixed = gb::mixed_norm(t);
        const double lhs = static_cast<double>(gb::injective_inf_norm(t));
        REQUIRE(lhs <= static_cast<double>(n) * mixed + 1e-6);
    }
}

TEST_CASE("enumeration budgets for tensor norms") {
    const SignTensor wide_mid({1, 21, 21},
                              std::vector<std::int8_t>(441, 1));
    REQUIRE_THROWS_AS(gb::mixed_norm(wide_mid), gb::SizeLimitError);
    const SignTensor wide_lead({23, 23}, std::vector<std::int8_t>(529, 1));
    REQUIRE_THROWS_AS(gb::injective_inf_norm(wide_lead), gb::SizeLimitError);
}

TEST_CASE("spectral route confirms the imbalance ceiling at large orders") {
    // Orders above the solve budget: g <= n * sigma_max(H) = n^(3/2).
    for (long long order : {28, 32, 36, 40, 48, 64}) {
        const SignMatrix h = gb::construct_hadamard(order);
        const double s = gb::spectral_norm(DenseMatrix::from_sign(h));
        REQUIRE(s <= std::sqrt(static_cast<double>(order)) + 1e-9);
    }
}
