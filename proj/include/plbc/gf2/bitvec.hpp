#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "plbc/gf2/kernels.hpp"

namespace plbc::gf2 {

// Packed binary vector. Bits beyond size() in the last word are kept zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    static BitVec from_bits(const std::vector<int>& bits);

    std::size_t size() const { return nbits_; }
    std::size_t num_words() const { return words_.size(); }
    const std::uint64_t* data() const { return words_.data(); }
    std::uint64_t* data() { return words_.data(); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void clear() { words_.assign(words_.size(), 0); }

    BitVec& operator^=(const BitVec& other) {
        active_kernels().xor_inplace(words_.data(), other.words_.data(), words_.size());
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }

    std::size_t popcount() const {
        return active_kernels().popcount(words_.data(), words_.size());
    }
    // <this, other> over GF(2)
    bool dot(const BitVec& other) const {
        return active_kernels().and_popcount(words_.data(), other.words_.data(),
                                             words_.size()) & 1;
    }
    std::size_t hamming_distance(const BitVec& other) const {
        return active_kernels().xor_popcount(words_.data(), other.words_.data(), words_.size());
    }

    bool is_zero() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    bool operator==(const BitVec& other) const = default;

    // Positions of set bits, ascending.
    std::vector<std::size_t> ones() const;

    std::string to_string() const;  // MSB-last bit string, e.g. "1011"
    std::string to_hex() const;     // little-endian nibble hex of the payload
    static BitVec from_hex(std::size_t nbits, const std::string& hex);

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace plbc::gf2
