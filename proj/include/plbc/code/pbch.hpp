#pragma once

#include <cstddef>
#include <string>

#include "plbc/gf2/bitmatrix.hpp"
#include "plbc/gf2/field.hpp"

namespace plbc::code {

using gf2::BinaryField;
using gf2::BitMatrix;
using gf2::BitVec;
using gf2::Gf2Poly;

// Generator polynomial of the narrow-sense BCH code of length 2^m - 1
// correcting t errors: lcm of the minimal polynomials of alpha^1 .. alpha^2t.
// t = 0 yields the constant polynomial 1.
Gf2Poly bch_generator_polynomial(const BinaryField& field, unsigned t);

// An [n, k, l] partitioned BCH code. Immutable after construction.
struct PartitionedCode {
    std::size_t n = 0, k = 0, l = 0, r = 0;
    unsigned m = 0;
    std::uint32_t primitive_poly = 0;
    unsigned d0 = 0, d1 = 0;  // designed distance pair; 0 marks a degenerate layer
    unsigned t0 = 0, t1 = 0;  // floor((d-1)/2), 0 when the layer is degenerate

    BitMatrix g1;       // n x k, message encoder
    BitMatrix g0;       // n x l, defect-masking encoder
    BitMatrix h_tilde;  // n x r, parity checks of the [n, k+l] code C
    BitMatrix g1_inv;   // n x k, message inverse: g1_inv^T g1 = I, g1_inv^T g0 = 0

    // Transposes kept for the hot mat-vec directions.
    BitMatrix g0_t;       // l x n
    BitMatrix h_tilde_t;  // r x n

    BinaryField field() const { return BinaryField(m, primitive_poly); }

    std::string to_json() const;
    static PartitionedCode from_json(const std::string& text);
};

// Construct the [n = 2^m - 1, k, l] PBCH code. Requires l and r = n - k - l
// to be nonnegative multiples of m (the degenerate l = 0 / r = 0 rows are
// allowed). Throws std::invalid_argument on parameter errors and
// std::runtime_error when the nesting or rank conditions fail.
PartitionedCode build_pbch(unsigned m, std::size_t k, std::size_t l);

// Re-checks every defining identity of the code; throws on violation.
void verify_code_invariants(const PartitionedCode& code);

}  // namespace plbc::code
