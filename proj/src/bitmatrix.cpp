#include "plbc/gf2/bitmatrix.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace plbc::gf2 {

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVec>& rows) {
    if (rows.empty()) return {};
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

BitVec BitMatrix::row(std::size_t r) const {
    BitVec v(cols_);
    auto sp = row_span(r);
    for (std::size_t w = 0; w < wpr_; ++w) v.data()[w] = sp[w];
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
    assert(v.size() == cols_);
    auto sp = row_span(r);
    for (std::size_t w = 0; w < wpr_; ++w) sp[w] = v.data()[w];
}

BitVec BitMatrix::column(std::size_t c) const {
    BitVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) v.set(r, true);
    return v;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    active_kernels().xor_inplace(words_.data() + dst * wpr_, words_.data() + src * wpr_, wpr_);
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < wpr_; ++w)
        std::swap(words_[a * wpr_ + w], words_[b * wpr_ + w]);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto sp = row_span(r);
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = sp[w];
            while (word) {
                std::size_t c = w * 64 + std::size_t(std::countr_zero(word));
                word &= word - 1;
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
    BitMatrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto sp = row_span(r);
        auto dst = out.row_span(r);
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t word = sp[w];
            while (word) {
                std::size_t j = w * 64 + std::size_t(std::countr_zero(word));
                word &= word - 1;
                active_kernels().xor_inplace(dst.data(), other.row_span(j).data(),
                                             other.wpr_);
            }
        }
    }
    return out;
}

BitVec BitMatrix::mul_vec(const BitVec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in mat-vec product");
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        bool bit = active_kernels().and_popcount(words_.data() + r * wpr_, x.data(), wpr_) & 1;
        if (bit) out.set(r, true);
    }
    return out;
}

BitVec BitMatrix::mul_transposed_vec(const BitVec& x) const {
    if (x.size() != rows_) throw std::invalid_argument("dimension mismatch in mat^T-vec product");
    BitVec out(cols_);
    for (std::size_t r : x.ones())
        active_kernels().xor_inplace(out.data(), words_.data() + r * wpr_, wpr_);
    return out;
}

bool BitMatrix::is_zero() const {
    for (std::uint64_t w : words_)
        if (w) return false;
    return true;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> idx) const {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= rows_ || (i > 0 && idx[i] <= idx[i - 1]))
            throw std::invalid_argument("row indices must be strictly increasing and in range");
    }
    BitMatrix out(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        auto src = row_span(idx[i]);
        auto dst = out.row_span(i);
        for (std::size_t w = 0; w < wpr_; ++w) dst[w] = src[w];
    }
    return out;
}

BitMatrix BitMatrix::select_cols(std::span<const std::size_t> idx) const {
    BitMatrix out(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= cols_) throw std::invalid_argument("column index out of range");
        for (std::size_t r = 0; r < rows_; ++r)
            if (get(r, idx[j])) out.set(r, j, true);
    }
    return out;
}

BitMatrix BitMatrix::augmented(const BitMatrix& other) const {
    if (rows_ != other.rows_) throw std::invalid_argument("row count mismatch in augment");
    BitMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(r, c, true);
        for (std::size_t c = 0; c < other.cols_; ++c)
            if (other.get(r, c)) out.set(r, cols_ + c, true);
    }
    return out;
}

namespace {

// In-place reduced row echelon form over the first `ncols` columns.
// Returns the pivot column of each pivot row, in order.
std::vector<std::size_t> rref(BitMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < ncols && next_row < m.rows(); ++col) {
        std::size_t pivot = next_row;
        while (pivot < m.rows() && !m.get(pivot, col)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(next_row, pivot);
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != next_row && m.get(r, col)) m.xor_row(r, next_row);
        pivots.push_back(col);
        ++next_row;
    }
    return pivots;
}

}  // namespace

std::size_t BitMatrix::rank() const {
    BitMatrix work = *this;
    return rref(work, cols_).size();
}

std::optional<BitMatrix> BitMatrix::solve_consistent(const BitMatrix& b) const {
    if (b.rows() != rows_) throw std::invalid_argument("rhs row count mismatch");
    BitMatrix work = augmented(b);
    auto pivots = rref(work, cols_);
    // Consistency: a pivot row count short of the rank of the augmented
    // system shows up as a zeroed coefficient row with a nonzero rhs.
    for (std::size_t r = pivots.size(); r < rows_; ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (work.get(r, cols_ + c)) return std::nullopt;
    BitMatrix x(cols_, b.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (work.get(i, cols_ + c)) x.set(pivots[i], c, true);
    return x;
}

std::optional<BitVec> BitMatrix::solve_consistent(const BitVec& b) const {
    BitMatrix rhs(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r)
        if (b.get(r)) rhs.set(r, 0, true);
    auto x = solve_consistent(rhs);
    if (!x) return std::nullopt;
    return x->column(0);
}

BitMatrix BitMatrix::nullspace_basis() const {
    BitMatrix work = *this;
    auto pivots = rref(work, cols_);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    BitMatrix basis(cols_, cols_ - pivots.size());
    std::size_t j = 0;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        basis.set(free, j, true);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (work.get(i, free)) basis.set(pivots[i], j, true);
        ++j;
    }
    return basis;
}

}  // namespace plbc::gf2
