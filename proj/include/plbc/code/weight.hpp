#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "plbc/code/pbch.hpp"

namespace plbc::code {

// Weight distribution of a length-n code. Exact mode stores integer counts;
// binomial mode represents counts[w] = 2^-dim * C(n, w) in log domain.
class WeightDistribution {
public:
    enum class Mode { exact, binomial };

    static WeightDistribution exact(std::size_t n, std::vector<mpz_class> counts);
    // counts[w] = 2^-dim_exponent * C(n, w)
    static WeightDistribution binomial(std::size_t n, std::size_t dim_exponent);

    Mode mode() const { return mode_; }
    std::size_t n() const { return n_; }

    // log2 of counts[w]; -infinity when the count is zero.
    double log2_count(std::size_t w) const;
    const mpz_class& exact_count(std::size_t w) const;
    const std::vector<mpz_class>& exact_counts() const;

private:
    WeightDistribution() = default;
    Mode mode_ = Mode::binomial;
    std::size_t n_ = 0;
    std::size_t dim_exponent_ = 0;
    std::vector<mpz_class> counts_;
};

// MacWilliams transform: weight distribution of the dual of a code of
// dimension `dim` whose distribution is `counts` (length n+1).
std::vector<mpz_class> macwilliams_transform(std::size_t n, std::size_t dim,
                                             const std::vector<mpz_class>& counts);

enum class WeightTarget {
    dual_of_c0,  // B_{0,w}: distribution of C0-perp, via the 2^l words of C0
    full_c,      // A_w: distribution of C, via the 2^r words of C-perp
};

// Exact distribution by enumerating the small side and transforming.
// Throws std::length_error when the enumerated dimension exceeds the cap.
WeightDistribution weight_distribution_exact(const PartitionedCode& code, WeightTarget which,
                                             std::size_t max_enumerated_dim = 26);

WeightDistribution weight_distribution_binomial(std::size_t n, std::size_t dual_dim_exponent);

// Weight histogram of the column space of `generators` (Gray-code walk over
// all 2^cols combinations). Exposed for tests.
std::vector<mpz_class> enumerate_colspace_weights(const gf2::BitMatrix& generators);

}  // namespace plbc::code
