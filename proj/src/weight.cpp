#include "plbc/code/weight.hpp"

#include <bit>
#include <stdexcept>

#include "plbc/util/logdomain.hpp"

namespace plbc::code {

WeightDistribution WeightDistribution::exact(std::size_t n, std::vector<mpz_class> counts) {
    if (counts.size() != n + 1) throw std::invalid_argument("counts must have n+1 entries");
    WeightDistribution d;
    d.mode_ = Mode::exact;
    d.n_ = n;
    d.counts_ = std::move(counts);
    return d;
}

WeightDistribution WeightDistribution::binomial(std::size_t n, std::size_t dim_exponent) {
    WeightDistribution d;
    d.mode_ = Mode::binomial;
    d.n_ = n;
    d.dim_exponent_ = dim_exponent;
    return d;
}

double WeightDistribution::log2_count(std::size_t w) const {
    if (w > n_) return util::neg_inf;
    if (mode_ == Mode::binomial)
        return util::log2_binomial(n_, w) - double(dim_exponent_);
    const mpz_class& c = counts_[w];
    if (c == 0) return util::neg_inf;
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, c.get_mpz_t());
    return std::log2(mant) + double(exp);
}

const mpz_class& WeightDistribution::exact_count(std::size_t w) const {
    if (mode_ != Mode::exact) throw std::logic_error("not an exact distribution");
    return counts_.at(w);
}

const std::vector<mpz_class>& WeightDistribution::exact_counts() const {
    if (mode_ != Mode::exact) throw std::logic_error("not an exact distribution");
    return counts_;
}

std::vector<mpz_class> macwilliams_transform(std::size_t n, std::size_t dim,
                                             const std::vector<mpz_class>& counts) {
    if (counts.size() != n + 1) throw std::invalid_argument("counts must have n+1 entries");
    // B_j = 2^-dim * sum_w A_w K_j(w) with the Krawtchouk recurrence
    // (j+1) K_{j+1}(w) = (n - 2w) K_j(w) - (n - j + 1) K_{j-1}(w).
    std::vector<mpz_class> out(n + 1, 0);
    for (std::size_t w = 0; w <= n; ++w) {
        if (counts[w] == 0) continue;
        mpz_class k_prev = 1;                                    // K_0(w)
        mpz_class k_cur = mpz_class(long(n) - 2 * long(w));      // K_1(w)
        out[0] += counts[w];
        if (n >= 1) out[1] += counts[w] * k_cur;
        for (std::size_t j = 1; j + 1 <= n; ++j) {
            mpz_class k_next = (long(n) - 2 * long(w)) * k_cur -
                               mpz_class(long(n) - long(j) + 1) * k_prev;
            mpz_divexact_ui(k_next.get_mpz_t(), k_next.get_mpz_t(), unsigned(j + 1));
            out[j + 1] += counts[w] * k_next;
            k_prev = std::move(k_cur);
            k_cur = std::move(k_next);
        }
    }
    mpz_class scale = mpz_class(1) << dim;
    for (auto& b : out) {
        if (b % scale != 0) throw std::logic_error("MacWilliams transform not integral");
        b /= scale;
        if (b < 0) throw std::logic_error("MacWilliams transform went negative");
    }
    return out;
}

std::vector<mpz_class> enumerate_colspace_weights(const gf2::BitMatrix& generators) {
    const std::size_t n = generators.rows();
    const std::size_t dim = generators.cols();
    std::vector<mpz_class> hist(n + 1, 0);
    std::vector<gf2::BitVec> cols(dim);
    for (std::size_t j = 0; j < dim; ++j) cols[j] = generators.column(j);
    gf2::BitVec current(n);
    hist[0] = 1;
    // Gray-code walk: one column XOR per codeword.
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << dim); ++i) {
        const unsigned flip = unsigned(std::countr_zero(i));
        current ^= cols[flip];
        hist[current.popcount()] += 1;
    }
    return hist;
}

WeightDistribution weight_distribution_exact(const PartitionedCode& code, WeightTarget which,
                                             std::size_t max_enumerated_dim) {
    const std::size_t n = code.n;
    const std::size_t enum_dim = which == WeightTarget::dual_of_c0 ? code.l : code.r;
    if (enum_dim > max_enumerated_dim)
        throw std::length_error("enumerated dimension exceeds cap; use the binomial "
                                "approximation instead");
    const gf2::BitMatrix& gens = which == WeightTarget::dual_of_c0 ? code.g0 : code.h_tilde;
    // For B_{0,w}: enumerate C0 and transform to its dual.
    // For A_w: enumerate C-perp (spanned by the columns of H~) and transform.
    auto small_hist = enumerate_colspace_weights(gens);
    return WeightDistribution::exact(n, macwilliams_transform(n, enum_dim, small_hist));
}

WeightDistribution weight_distribution_binomial(std::size_t n, std::size_t dual_dim_exponent) {
    return WeightDistribution::binomial(n, dual_dim_exponent);
}

}  // namespace plbc::code
