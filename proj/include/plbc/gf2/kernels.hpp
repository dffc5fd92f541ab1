#pragma once

#include <cstddef>
#include <cstdint>

// Word-level kernels for packed GF(2) arithmetic. Scalar reference
// implementations always exist; AVX2 (x86-64) and NEON (aarch64) variants
// are selected once at startup based on runtime CPU detection.

namespace plbc::gf2 {

struct Kernels {
    // dst[i] ^= src[i]
    void (*xor_inplace)(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);
    // dst[i] = a[i] ^ b[i]
    void (*xor_into)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                     std::size_t nwords);
    // sum of popcount(words[i])
    std::size_t (*popcount)(const std::uint64_t* words, std::size_t nwords);
    // sum of popcount(a[i] & b[i])
    std::size_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords);
    // sum of popcount(a[i] ^ b[i])
    std::size_t (*xor_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords);
    const char* name;
};

namespace kernels_scalar {
void xor_inplace(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);
void xor_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords);
std::size_t popcount(const std::uint64_t* words, std::size_t nwords);
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
std::size_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
}  // namespace kernels_scalar

// Scalar reference table (always available, used by equivalence tests).
const Kernels& scalar_kernels();

// Best table for the running CPU, chosen once.
const Kernels& active_kernels();

}  // namespace plbc::gf2
