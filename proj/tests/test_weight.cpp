#include <doctest.h>

#include <cmath>

#include "plbc/code/weight.hpp"
#include "plbc/util/logdomain.hpp"

namespace {

using plbc::code::build_pbch;
using plbc::code::macwilliams_transform;
using plbc::code::WeightDistribution;
using plbc::code::WeightTarget;
using plbc::gf2::BitMatrix;
using plbc::gf2::BitVec;

}  // namespace

TEST_CASE("Hamming [7,4] weight distribution") {
    // Columns generate the [7,4] Hamming code.
    BitMatrix gen(7, 4);
    const int rows[7][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                            {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}};
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 4; ++j) gen.set(i, j, rows[i][j]);
    const auto counts = plbc::code::enumerate_colspace_weights(gen);
    const mpz_class expected[] = {1, 0, 0, 7, 7, 0, 0, 1};
    REQUIRE(counts.size() == 8);
    for (int w = 0; w < 8; ++w) CHECK(counts[w] == expected[w]);

    // Self-dual up to the MacWilliams transform with the [7,3] simplex dual.
    const auto dual = macwilliams_transform(7, 4, counts);
    mpz_class dual_sum = 0;
    for (const auto& c : dual) dual_sum += c;
    CHECK(dual_sum == 8);  // 2^(7-4)
    CHECK(dual[0] == 1);
    CHECK(dual[7] == 0);
    CHECK(dual[3] == 0);
    CHECK(dual[4] == 7);  // simplex: all nonzero words have weight 4
}

TEST_CASE("MacWilliams round trip and sum rule") {
    const auto code = build_pbch(5, 16, 10);
    const auto b0 = plbc::code::weight_distribution_exact(code, WeightTarget::dual_of_c0);
    CHECK(b0.mode() == WeightDistribution::Mode::exact);
    CHECK(b0.exact_count(0) == 1);
    mpz_class sum = 0;
    for (std::size_t w = 0; w <= 31; ++w) sum += b0.exact_count(w);
    mpz_class expected = mpz_class(1) << (31 - code.l);  // dim of C0-perp = n - l
    CHECK(sum == expected);
    // transform twice: back to the C0 distribution scaled correctly
    const auto fwd = macwilliams_transform(31, 31 - code.l, b0.exact_counts());
    mpz_class fwd_sum = 0;
    for (const auto& c : fwd) fwd_sum += c;
    CHECK(fwd_sum == mpz_class(1) << code.l);
    const auto back = macwilliams_transform(31, code.l, fwd);
    CHECK(back == b0.exact_counts());
}

TEST_CASE("B0w vanishes below the designed distance") {
    const auto code = build_pbch(5, 16, 10);  // d0 = 5
    const auto b0 = plbc::code::weight_distribution_exact(code, WeightTarget::dual_of_c0);
    for (unsigned w = 1; w < code.d0; ++w) CHECK(b0.exact_count(w) == 0);
    CHECK(b0.exact_count(code.d0) > 0);
}

TEST_CASE("A_w via the dual side") {
    const auto code = build_pbch(4, 7, 4);  // r = 4, C is the [15,11] Hamming code
    const auto a = plbc::code::weight_distribution_exact(code, WeightTarget::full_c);
    mpz_class sum = 0;
    for (std::size_t w = 0; w <= 15; ++w) sum += a.exact_count(w);
    CHECK(sum == mpz_class(1) << 11);
    CHECK(a.exact_count(0) == 1);
    CHECK(a.exact_count(1) == 0);
    CHECK(a.exact_count(2) == 0);
    CHECK(a.exact_count(3) == 35);  // [15,11] Hamming A_3
}

TEST_CASE("binomial mode") {
    const auto b = WeightDistribution::binomial(1023, 50);
    CHECK(b.log2_count(0) == doctest::Approx(-50.0));
    const auto l0 = WeightDistribution::binomial(31, 0);
    const auto exact_l0 =
        plbc::code::weight_distribution_exact(build_pbch(5, 21, 0), WeightTarget::dual_of_c0);
    for (std::size_t w = 0; w <= 31; ++w)
        CHECK(l0.log2_count(w) == doctest::Approx(exact_l0.log2_count(w)).epsilon(1e-9));
    // n=31, l=10, w=31 -> 2^-10
    CHECK(std::exp2(WeightDistribution::binomial(31, 10).log2_count(31)) ==
          doctest::Approx(9.765625e-4));
}

TEST_CASE("binomial tracks exact total covering mass within 3x at n=31") {
    const auto code = build_pbch(5, 16, 10);
    const auto exact = plbc::code::weight_distribution_exact(code, WeightTarget::dual_of_c0);
    const auto approx = WeightDistribution::binomial(31, 10);
    for (std::size_t u : {std::size_t(10), std::size_t(12)}) {
        plbc::util::Log2Sum se, sa;
        for (std::size_t w = code.d0; w <= u; ++w) {
            se.add(exact.log2_count(w) + plbc::util::log2_binomial(31 - w, u - w));
            sa.add(approx.log2_count(w) + plbc::util::log2_binomial(31 - w, u - w));
        }
        const double ratio = std::exp2(sa.log2() - se.log2());
        CHECK(ratio < 3.0);
        CHECK(ratio > 1.0 / 3.0);
    }
}

TEST_CASE("enumeration cap") {
    const auto code = build_pbch(5, 16, 10);
    CHECK_THROWS_AS(plbc::code::weight_distribution_exact(code, WeightTarget::dual_of_c0, 8),
                    std::length_error);
}
