#include "plbc/gf2/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace plbc::gf2 {

Gf2Poly::Gf2Poly(std::vector<std::uint8_t> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    for (auto& c : coeffs_) c &= 1;
}

Gf2Poly Gf2Poly::x_power(std::size_t n) {
    std::vector<std::uint8_t> c(n + 1, 0);
    c[n] = 1;
    return Gf2Poly(std::move(c));
}

Gf2Poly Gf2Poly::from_bits(std::uint64_t bits) {
    std::vector<std::uint8_t> c;
    for (std::uint64_t b = bits; b; b >>= 1) c.push_back(b & 1);
    return Gf2Poly(std::move(c));
}

Gf2Poly Gf2Poly::operator+(const Gf2Poly& other) const {
    std::vector<std::uint8_t> c(std::max(coeffs_.size(), other.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = std::uint8_t(coeff(i) ^ other.coeff(i));
    return Gf2Poly(std::move(c));
}

Gf2Poly Gf2Poly::operator*(const Gf2Poly& other) const {
    if (is_zero() || other.is_zero()) return {};
    std::vector<std::uint8_t> c(coeffs_.size() + other.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!coeffs_[i]) continue;
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            c[i + j] ^= other.coeffs_[j];
    }
    return Gf2Poly(std::move(c));
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (degree() < divisor.degree()) return {{}, *this};
    std::vector<std::uint8_t> rem = coeffs_;
    std::vector<std::uint8_t> quot(std::size_t(degree() - divisor.degree()) + 1, 0);
    for (int d = degree(); d >= divisor.degree(); --d) {
        if (!rem[std::size_t(d)]) continue;
        const std::size_t shift = std::size_t(d - divisor.degree());
        quot[shift] = 1;
        for (std::size_t i = 0; i < divisor.coeffs_.size(); ++i)
            rem[shift + i] ^= divisor.coeffs_[i];
    }
    return {Gf2Poly(std::move(quot)), Gf2Poly(std::move(rem))};
}

std::string Gf2Poly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (!coeffs_[std::size_t(i)]) continue;
        if (!s.empty()) s += "+";
        if (i == 0)
            s += "1";
        else if (i == 1)
            s += "x";
        else
            s += "x^" + std::to_string(i);
    }
    return s;
}

Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
    while (!b.is_zero()) {
        Gf2Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Gf2Poly poly_lcm(const Gf2Poly& a, const Gf2Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return (a * b).divmod(poly_gcd(a, b)).first;
}

Gf2Poly poly_lcm(const std::vector<Gf2Poly>& polys) {
    Gf2Poly acc = Gf2Poly::one();
    for (const auto& p : polys) acc = poly_lcm(acc, p);
    return acc;
}

std::uint32_t BinaryField::default_primitive_poly(unsigned m) {
    // Conventional choices (lexicographically-first primitive trinomials /
    // pentanomials from standard tables).
    static const std::uint32_t table[] = {
        0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,
        0x11D,  0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003,
        0x1100B,
    };
    if (m < 1 || m > 16) throw std::invalid_argument("field degree out of supported range");
    return table[m];
}

BinaryField::BinaryField(unsigned m, std::uint32_t primitive_poly)
    : m_(m), prim_poly_(primitive_poly), size_(1u << m) {
    if (m < 1 || m > 16) throw std::invalid_argument("field degree out of supported range");
    if ((primitive_poly >> m) != 1)
        throw std::invalid_argument("primitive polynomial degree must equal m");
    exp_.assign(size_ - 1, 0);
    log_.assign(size_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < size_ - 1; ++i) {
        exp_[i] = x;
        if (x == 1 && i != 0)
            throw std::invalid_argument("polynomial is not primitive: alpha^i = 1 early");
        log_[x] = i;
        x <<= 1;
        if (x & size_) x ^= prim_poly_;
    }
    if (x != 1) throw std::invalid_argument("polynomial is not primitive");
}

std::uint32_t BinaryField::inv(std::uint32_t a) const {
    if (a == 0) throw std::invalid_argument("inverse of zero");
    return exp_[(order() - log_[a]) % order()];
}

std::uint32_t BinaryField::alpha_power(long long i) const {
    long long e = i % order();
    if (e < 0) e += order();
    return exp_[std::size_t(e)];
}

std::uint32_t BinaryField::pow(std::uint32_t a, long long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    long long le = (static_cast<long long>(log_[a]) * (e % order())) % order();
    if (le < 0) le += order();
    return exp_[std::size_t(le)];
}

std::uint32_t BinaryField::log(std::uint32_t a) const {
    if (a == 0) throw std::invalid_argument("log of zero");
    return log_[a];
}

Gf2Poly BinaryField::minimal_polynomial(std::uint32_t element) const {
    if (element == 0) throw std::invalid_argument("minimal polynomial of zero");
    // Conjugates element^(2^j) until the cycle closes.
    std::vector<std::uint32_t> conjugates;
    std::uint32_t c = element;
    do {
        conjugates.push_back(c);
        c = mul(c, c);
    } while (c != element);
    // Product of (x + conjugate) over GF(2^m); coefficients land in GF(2).
    std::vector<std::uint32_t> poly = {1};  // LSB-first coefficients
    for (std::uint32_t conj : conjugates) {
        std::vector<std::uint32_t> next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] ^= mul(poly[i], conj);  // multiply by the root term
            next[i + 1] ^= poly[i];         // shift for the x term
        }
        poly = std::move(next);
    }
    std::vector<std::uint8_t> bits(poly.size(), 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] > 1)
            throw std::logic_error("minimal polynomial coefficient outside GF(2)");
        bits[i] = std::uint8_t(poly[i]);
    }
    return Gf2Poly(std::move(bits));
}

}  // namespace plbc::gf2
