#include <doctest.h>

#include <stdexcept>

#include "plbc/channel/channel.hpp"
#include "plbc/code/pbch.hpp"
#include "plbc/gf2/field.hpp"

namespace {

using plbc::channel::Rng;
using plbc::gf2::BinaryField;
using plbc::gf2::Gf2Poly;

Gf2Poly poly(std::uint64_t bits) { return Gf2Poly::from_bits(bits); }

void check_axioms(const BinaryField& f, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    if (a != 0) {
        CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.pow(a, f.order()) == 1);
    }
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    // (x+1)(x^2+x+1) = x^3+1
    CHECK(poly(0b11) * poly(0b111) == poly(0b1001));
    CHECK((poly(0b1001) % poly(0b11)).is_zero());
    CHECK(poly(0b11).divides(poly(0b1001)));
    const auto [q, r] = poly(0b10011).divmod(poly(0b111));
    CHECK(poly(0b111) * q + r == poly(0b10011));
    CHECK(plbc::gf2::poly_gcd(poly(0b1001), poly(0b111)) == poly(0b111));
    CHECK(plbc::gf2::poly_lcm(poly(0b11), poly(0b111)) == poly(0b1001));
    CHECK(Gf2Poly().degree() == -1);
    CHECK(poly(0b10011).to_string() == "x^4+x+1");
}

TEST_CASE("field construction and primitivity") {
    const BinaryField f4(4);
    CHECK(f4.primitive_poly() == 0x13);
    CHECK(f4.order() == 15);
    CHECK(f4.alpha_power(15) == 1);
    for (std::uint32_t i = 1; i < 15; ++i) CHECK(f4.alpha_power(i) != 1);
    // x^4 + x^3 + x^2 + x + 1 divides x^5 - 1: order 5, not primitive.
    CHECK_THROWS_AS(BinaryField(4, 0x1F), std::invalid_argument);
}

TEST_CASE("exp/log round trip") {
    for (unsigned m : {3u, 4u, 8u}) {
        const BinaryField f(m);
        for (std::uint32_t x = 1; x <= f.order(); ++x)
            CHECK(f.alpha_power(f.log(x)) == x);
    }
}

TEST_CASE("field axioms exhaustive for small m") {
    for (unsigned m : {1u, 2u, 3u, 4u}) {
        const BinaryField f(m);
        for (std::uint32_t a = 0; a <= f.order(); ++a)
            for (std::uint32_t b = 0; b <= f.order(); ++b)
                for (std::uint32_t c = 0; c <= f.order(); ++c) check_axioms(f, a, b, c);
    }
}

TEST_CASE("field axioms random for m in {5, 10}") {
    Rng rng(5);
    for (unsigned m : {5u, 10u}) {
        const BinaryField f(m);
        for (int t = 0; t < 2000; ++t) {
            const auto a = std::uint32_t(rng.uniform(f.order() + 1));
            const auto b = std::uint32_t(rng.uniform(f.order() + 1));
            const auto c = std::uint32_t(rng.uniform(f.order() + 1));
            check_axioms(f, a, b, c);
        }
    }
}

TEST_CASE("minimal polynomials") {
    const BinaryField f(4);
    CHECK(f.minimal_polynomial(1) == poly(0b11));            // x + 1
    CHECK(f.minimal_polynomial(f.alpha_power(1)) == poly(0x13));  // x^4+x+1
    // alpha^3: (x-a^3)(x-a^6)(x-a^12)(x-a^9) = x^4+x^3+x^2+x+1
    CHECK(f.minimal_polynomial(f.alpha_power(3)) == poly(0b11111));
    // Every minimal polynomial divides x^(2^m - 1) - 1 and annihilates its element.
    for (std::uint32_t x = 1; x <= f.order(); ++x) {
        const Gf2Poly p = f.minimal_polynomial(x);
        CHECK(p.divides(Gf2Poly::x_power(15) + Gf2Poly::one()));
        std::uint32_t acc = 0;
        for (int i = 0; i <= p.degree(); ++i)
            if (p.coeff(std::size_t(i))) acc ^= f.pow(x, i);
        CHECK(acc == 0);
    }
}

TEST_CASE("BCH generator polynomials") {
    CHECK(plbc::code::bch_generator_polynomial(BinaryField(5), 1).degree() == 5);
    CHECK(plbc::code::bch_generator_polynomial(BinaryField(10), 5).degree() == 50);
    // m=4, t=2: minpoly(alpha) * minpoly(alpha^3), the [15,7] BCH generator
    const BinaryField f(4);
    const Gf2Poly g = plbc::code::bch_generator_polynomial(f, 2);
    CHECK(g.degree() == 8);
    CHECK(g == f.minimal_polynomial(f.alpha_power(1)) * f.minimal_polynomial(f.alpha_power(3)));
    // designed roots alpha^1 .. alpha^4 all vanish
    for (unsigned j = 1; j <= 4; ++j) {
        std::uint32_t acc = 0;
        for (int i = 0; i <= g.degree(); ++i)
            if (g.coeff(std::size_t(i))) acc ^= f.alpha_power((long long)i * j);
        CHECK(acc == 0);
    }
    CHECK(plbc::code::bch_generator_polynomial(f, 0) == Gf2Poly::one());
}
