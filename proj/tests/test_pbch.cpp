#include <doctest.h>

#include <stdexcept>

#include "plbc/channel/channel.hpp"
#include "plbc/code/pbch.hpp"

namespace {

using plbc::channel::Rng;
using plbc::code::build_pbch;
using plbc::code::PartitionedCode;
using plbc::code::verify_code_invariants;
using plbc::gf2::BitMatrix;
using plbc::gf2::BitVec;

std::vector<std::size_t> random_subset(std::size_t n, std::size_t u, Rng& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < u; ++i) std::swap(pool[i], pool[i + rng.uniform(n - i)]);
    pool.resize(u);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

TEST_CASE("table of [1023,923,l] codes has the designed distance pairs") {
    const unsigned expected_d0[] = {0, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21};
    for (std::size_t i = 0; i <= 10; ++i) {
        const auto code = build_pbch(10, 923, 10 * i);
        CHECK(code.d0 == expected_d0[i]);
        CHECK(code.d1 == expected_d0[10 - i]);
        CHECK(code.l + code.r == 100);
        verify_code_invariants(code);
    }
}

TEST_CASE("m=4 and m=5 family invariants") {
    struct Params { unsigned m; std::size_t k, l; };
    for (auto [m, k, l] : {Params{4, 7, 4}, Params{4, 7, 0}, Params{4, 7, 8},
                           Params{5, 16, 10}, Params{5, 21, 5}, Params{5, 11, 20}}) {
        const auto code = build_pbch(m, k, l);
        CHECK(code.n == (std::size_t(1) << m) - 1);
        CHECK(code.k == k);
        CHECK(code.l == l);
        verify_code_invariants(code);
    }
    const auto code = build_pbch(4, 7, 4);
    CHECK(code.d0 == 3);
    CHECK(code.d1 == 3);
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(build_pbch(4, 7, 5), std::invalid_argument);   // l not multiple of m
    CHECK_THROWS_AS(build_pbch(4, 6, 4), std::invalid_argument);   // r not multiple of m
    CHECK_THROWS_AS(build_pbch(4, 20, 0), std::invalid_argument);  // k > n
    // n=31, l=25: cyclotomic coset collision, deg(g0) = 20 != 25
    CHECK_THROWS_AS(build_pbch(5, 6, 25), std::runtime_error);
}

TEST_CASE("codewords satisfy the BCH root property of C") {
    const auto code = build_pbch(5, 16, 10);  // r = 5, t1 = 1
    const auto field = code.field();
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        BitVec x(code.k + code.l);
        for (std::size_t i = 0; i < x.size(); ++i) x.set(i, rng.bernoulli(0.5));
        BitVec msg(code.k), d(code.l);
        for (std::size_t i = 0; i < code.k; ++i) msg.set(i, x.get(i));
        for (std::size_t i = 0; i < code.l; ++i) d.set(i, x.get(code.k + i));
        const BitVec c = code.g1.mul_vec(msg) ^ code.g0.mul_vec(d);
        for (unsigned j = 1; j <= 2 * code.t1; ++j) {
            std::uint32_t acc = 0;
            for (std::size_t i : c.ones())
                acc ^= field.alpha_power((long long)i * j % field.order());
            CHECK(acc == 0);
        }
    }
}

TEST_CASE("every u < d0 row selection of G0 has full rank") {
    Rng rng(19);
    struct Params { unsigned m; std::size_t k, l; };
    for (auto [m, k, l] : {Params{4, 7, 4}, Params{5, 16, 10}, Params{5, 11, 20}}) {
        const auto code = build_pbch(m, k, l);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t u = 1 + rng.uniform(code.d0 - 1);
            const auto idx = random_subset(code.n, u, rng);
            CHECK(code.g0.select_rows(idx).rank() == u);
        }
    }
}

TEST_CASE("degenerate layers") {
    const auto no_mask = build_pbch(4, 7, 0);
    CHECK(no_mask.d0 == 0);
    CHECK(no_mask.g0.cols() == 0);
    const auto no_ecc = build_pbch(4, 7, 8);
    CHECK(no_ecc.d1 == 0);
    CHECK(no_ecc.h_tilde.cols() == 0);
}

TEST_CASE("JSON round trip") {
    const auto code = build_pbch(4, 7, 4);
    const auto restored = PartitionedCode::from_json(code.to_json());
    CHECK(restored.n == code.n);
    CHECK(restored.k == code.k);
    CHECK(restored.l == code.l);
    CHECK(restored.primitive_poly == code.primitive_poly);
    CHECK(restored.d0 == code.d0);
    CHECK(restored.d1 == code.d1);
    CHECK(restored.g1 == code.g1);
    CHECK(restored.g0 == code.g0);
    CHECK(restored.h_tilde == code.h_tilde);
    CHECK(restored.g1_inv == code.g1_inv);
}
