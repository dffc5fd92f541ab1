#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace plbc::util {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline double log2_binomial(std::size_t n, std::size_t k) {
    if (k > n) return neg_inf;
    static constexpr double inv_ln2 = 1.4426950408889634073599246810019;
    return (std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
            std::lgamma(double(n - k) + 1)) * inv_ln2;
}

// log2(2^a + 2^b), stable.
inline double log2_add(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log2(1.0 + std::exp2(b - a));
}

// Accumulator for sums of nonnegative terms given as log2 values.
class Log2Sum {
public:
    void add(double log2_term) { total_ = log2_add(total_, log2_term); }
    double log2() const { return total_; }
    double value() const { return total_ == neg_inf ? 0.0 : std::exp2(total_); }

private:
    double total_ = neg_inf;
};

// Binary entropy, h(0) = h(1) = 0 by convention.
inline double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// log2 of C(n,u) q^u (1-q)^(n-u); -inf when q makes the term vanish.
inline double log2_binomial_pmf(std::size_t n, std::size_t u, double q) {
    if (q <= 0.0) return u == 0 ? 0.0 : neg_inf;
    if (q >= 1.0) return u == n ? 0.0 : neg_inf;
    return log2_binomial(n, u) + double(u) * std::log2(q) +
           double(n - u) * std::log2(1.0 - q);
}

}  // namespace plbc::util
