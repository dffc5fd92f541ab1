#include "plbc/gf2/kernels.hpp"

#include <bit>

#if defined(__x86_64__) || defined(_M_X64)
#define PLBC_X86 1
#include <immintrin.h>
#else
#define PLBC_X86 0
#endif

#if defined(__aarch64__)
#define PLBC_NEON 1
#include <arm_neon.h>
#else
#define PLBC_NEON 0
#endif

namespace plbc::gf2 {

namespace kernels_scalar {

void xor_inplace(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) dst[i] ^= src[i];
}

void xor_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) dst[i] = a[i] ^ b[i];
}

std::size_t popcount(const std::uint64_t* words, std::size_t nwords) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(words[i]);
    return total;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

std::size_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(a[i] ^ b[i]);
    return total;
}

}  // namespace kernels_scalar

#if PLBC_X86

namespace kernels_avx2 {

__attribute__((target("avx2"))) void xor_inplace(std::uint64_t* dst, const std::uint64_t* src,
                                                 std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
    }
    for (; i < nwords; ++i) dst[i] ^= src[i];
}

__attribute__((target("avx2"))) void xor_into(std::uint64_t* dst, const std::uint64_t* a,
                                              const std::uint64_t* b, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(x, y));
    }
    for (; i < nwords; ++i) dst[i] = a[i] ^ b[i];
}

// Popcounts stay on the scalar POPCNT path; for the row widths used here
// (n <= a few thousand bits) hardware popcnt on 64-bit words is already
// throughput-bound on loads.
std::size_t popcount(const std::uint64_t* words, std::size_t nwords) {
    return kernels_scalar::popcount(words, nwords);
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    return kernels_scalar::and_popcount(a, b, nwords);
}

std::size_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    return kernels_scalar::xor_popcount(a, b, nwords);
}

}  // namespace kernels_avx2

#endif  // PLBC_X86

#if PLBC_NEON

namespace kernels_neon {

void xor_inplace(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint64x2_t d = vld1q_u64(dst + i);
        uint64x2_t s = vld1q_u64(src + i);
        vst1q_u64(dst + i, veorq_u64(d, s));
    }
    for (; i < nwords; ++i) dst[i] ^= src[i];
}

void xor_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        vst1q_u64(dst + i, veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    }
    for (; i < nwords; ++i) dst[i] = a[i] ^ b[i];
}

std::size_t popcount(const std::uint64_t* words, std::size_t nwords) {
    std::size_t i = 0;
    std::size_t total = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint8x16_t bytes = vreinterpretq_u8_u64(vld1q_u64(words + i));
        total += vaddvq_u8(vcntq_u8(bytes));
    }
    for (; i < nwords; ++i) total += std::popcount(words[i]);
    return total;
}

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::size_t i = 0;
    std::size_t total = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint64x2_t x = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        total += vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(x)));
    }
    for (; i < nwords; ++i) total += std::popcount(a[i] & b[i]);
    return total;
}

std::size_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
    std::size_t i = 0;
    std::size_t total = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint64x2_t x = veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
        total += vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(x)));
    }
    for (; i < nwords; ++i) total += std::popcount(a[i] ^ b[i]);
    return total;
}

}  // namespace kernels_neon

#endif  // PLBC_NEON

const Kernels& scalar_kernels() {
    static const Kernels k = {
        kernels_scalar::xor_inplace, kernels_scalar::xor_into,   kernels_scalar::popcount,
        kernels_scalar::and_popcount, kernels_scalar::xor_popcount, "scalar",
    };
    return k;
}

const Kernels& active_kernels() {
    static const Kernels k = [] {
#if PLBC_X86
        if (__builtin_cpu_supports("avx2")) {
            return Kernels{kernels_avx2::xor_inplace, kernels_avx2::xor_into,
                           kernels_avx2::popcount,    kernels_avx2::and_popcount,
                           kernels_avx2::xor_popcount, "avx2"};
        }
#endif
#if PLBC_NEON
        return Kernels{kernels_neon::xor_inplace, kernels_neon::xor_into,
                       kernels_neon::popcount,    kernels_neon::and_popcount,
                       kernels_neon::xor_popcount, "neon"};
#endif
        return scalar_kernels();
    }();
    return k;
}

}  // namespace plbc::gf2
