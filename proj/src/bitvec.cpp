#include "plbc/gf2/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace plbc::gf2 {

BitVec BitVec::from_bits(const std::vector<int>& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) v.set(i, true);
    return v;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word) {
            out.push_back(w * 64 + std::countr_zero(word));
            word &= word - 1;
        }
    }
    return out;
}

std::string BitVec::to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::string BitVec::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    const std::size_t nibbles = (nbits_ + 3) / 4;
    std::string s(nibbles, '0');
    for (std::size_t i = 0; i < nibbles; ++i) {
        unsigned nib = 0;
        for (unsigned b = 0; b < 4; ++b) {
            std::size_t pos = i * 4 + b;
            if (pos < nbits_ && get(pos)) nib |= 1u << b;
        }
        s[i] = digits[nib];
    }
    return s;
}

BitVec BitVec::from_hex(std::size_t nbits, const std::string& hex) {
    if (hex.size() != (nbits + 3) / 4) throw std::invalid_argument("hex length mismatch");
    BitVec v(nbits);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        char c = hex[i];
        unsigned nib;
        if (c >= '0' && c <= '9')
            nib = unsigned(c - '0');
        else if (c >= 'a' && c <= 'f')
            nib = unsigned(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            nib = unsigned(c - 'A' + 10);
        else
            throw std::invalid_argument("bad hex digit");
        for (unsigned b = 0; b < 4; ++b) {
            std::size_t pos = i * 4 + b;
            if (nib & (1u << b)) {
                if (pos >= nbits) throw std::invalid_argument("hex sets bit past size");
                v.set(pos, true);
            }
        }
    }
    return v;
}

}  // namespace plbc::gf2
