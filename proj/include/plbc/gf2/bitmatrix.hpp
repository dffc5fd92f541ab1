#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plbc/gf2/bitvec.hpp"

namespace plbc::gf2 {

// Dense row-major packed matrix over GF(2).
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), words_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(const std::vector<BitVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t(1) << (c & 63);
        if (v)
            words_[r * wpr_ + (c >> 6)] |= mask;
        else
            words_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    std::span<std::uint64_t> row_span(std::size_t r) {
        return {words_.data() + r * wpr_, wpr_};
    }
    std::span<const std::uint64_t> row_span(std::size_t r) const {
        return {words_.data() + r * wpr_, wpr_};
    }
    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);
    BitVec column(std::size_t c) const;
    void xor_row(std::size_t dst, std::size_t src);  // row[dst] ^= row[src]
    void swap_rows(std::size_t a, std::size_t b);

    BitMatrix transposed() const;
    BitMatrix operator*(const BitMatrix& other) const;
    BitVec mul_vec(const BitVec& x) const;            // rows() bits
    BitVec mul_transposed_vec(const BitVec& x) const; // (this^T) x, cols() bits

    bool operator==(const BitMatrix& other) const = default;
    bool is_zero() const;

    // Row selection (strictly increasing indices assumed valid by caller;
    // checked in debug and by public callers).
    BitMatrix select_rows(std::span<const std::size_t> idx) const;
    BitMatrix select_cols(std::span<const std::size_t> idx) const;
    // Horizontal concatenation [this | other].
    BitMatrix augmented(const BitMatrix& other) const;

    std::size_t rank() const;

    // Solve this * x = b for one x, or nullopt when inconsistent. Elimination
    // pivots on the lowest-index usable column; free variables are zero, so
    // the returned solution is deterministic.
    std::optional<BitVec> solve_consistent(const BitVec& b) const;
    // Multi-RHS variant: solves this * X = B column-wise with one elimination.
    std::optional<BitMatrix> solve_consistent(const BitMatrix& b) const;

    // Columns form a basis of the right nullspace {x : this*x = 0}.
    BitMatrix nullspace_basis() const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace plbc::gf2
