#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plbc::gf2 {

// Polynomial over GF(2), coefficient of x^i at coeffs()[i]. Normalized: no
// trailing zero coefficients; the zero polynomial has empty storage.
class Gf2Poly {
public:
    Gf2Poly() = default;
    explicit Gf2Poly(std::vector<std::uint8_t> coeffs);
    static Gf2Poly one() { return Gf2Poly({1}); }
    static Gf2Poly x_power(std::size_t n);
    // Bits of `bits` are coefficients, LSB = x^0.
    static Gf2Poly from_bits(std::uint64_t bits);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1 by convention here.
    int degree() const { return int(coeffs_.size()) - 1; }
    const std::vector<std::uint8_t>& coeffs() const { return coeffs_; }
    bool coeff(std::size_t i) const { return i < coeffs_.size() && coeffs_[i]; }

    Gf2Poly operator+(const Gf2Poly& other) const;
    Gf2Poly operator*(const Gf2Poly& other) const;
    // {quotient, remainder}
    std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& divisor) const;
    Gf2Poly operator%(const Gf2Poly& d) const { return divmod(d).second; }
    bool divides(const Gf2Poly& other) const { return other.divmod(*this).second.is_zero(); }

    bool operator==(const Gf2Poly& other) const = default;

    std::string to_string() const;  // e.g. "x^4+x+1"

private:
    std::vector<std::uint8_t> coeffs_;
};

Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b);
Gf2Poly poly_lcm(const Gf2Poly& a, const Gf2Poly& b);
Gf2Poly poly_lcm(const std::vector<Gf2Poly>& polys);

// GF(2^m) with log/antilog tables built from a primitive polynomial.
// Elements are polynomial-basis bit patterns in [0, 2^m).
class BinaryField {
public:
    // Conventional primitive polynomial for the given degree (1 <= m <= 16).
    static std::uint32_t default_primitive_poly(unsigned m);

    explicit BinaryField(unsigned m) : BinaryField(m, default_primitive_poly(m)) {}
    // Throws std::invalid_argument when the polynomial is not primitive.
    BinaryField(unsigned m, std::uint32_t primitive_poly);

    unsigned m() const { return m_; }
    std::uint32_t primitive_poly() const { return prim_poly_; }
    std::uint32_t order() const { return size_ - 1; }  // multiplicative order 2^m - 1

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % order()];
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
    // alpha^i for any integer exponent (reduced mod 2^m - 1)
    std::uint32_t alpha_power(long long i) const;
    // a^e
    std::uint32_t pow(std::uint32_t a, long long e) const;
    std::uint32_t log(std::uint32_t a) const;  // discrete log base alpha, a != 0

    // Minimal polynomial over GF(2) of the given nonzero element.
    Gf2Poly minimal_polynomial(std::uint32_t element) const;

private:
    unsigned m_;
    std::uint32_t prim_poly_;
    std::uint32_t size_;
    std::vector<std::uint32_t> exp_;  // exp_[i] = alpha^i, i in [0, 2^m-2]
    std::vector<std::uint32_t> log_;  // log_[exp_[i]] = i
};

}  // namespace plbc::gf2
