#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "plbc/code/weight.hpp"

namespace plbc::analysis {

using code::PartitionedCode;
using code::WeightDistribution;

// A probability bound/estimate with its log-domain value and the per-term
// breakdown (masking term and transient-error term, log2, pre-clamp).
struct BoundValue {
    double value = 0.0;       // clamped to [0, 1]
    double log2_value = 0.0;  // log2(value); -inf when value is 0
    double masking_log2;
    double error_log2;
};

enum class FailRegime { zero, exact, upper };

// Designed-parameter view of a redundancy allocation candidate; enough for
// every closed-form bound without constructing matrices.
struct CodeShape {
    std::size_t n = 0, k = 0, l = 0, r = 0;
    unsigned d0 = 0, d1 = 0, t0 = 0, t1 = 0;

    static CodeShape designed(std::size_t n, std::size_t k, std::size_t l, unsigned m);
    static CodeShape of(const PartitionedCode& code);
};

struct ConditionalFail {
    BoundValue bound;
    FailRegime regime;
};

// P(E=0 | U=u): zero below d0, exact in the half-counted band, clamped upper
// bound beyond it.
ConditionalFail enc_fail_given_u(const CodeShape& shape, std::size_t u,
                                 const WeightDistribution& b0);

// Upper bound on P(E=0) over the defect distribution.
BoundValue enc_fail_bound(const CodeShape& shape, double beta, const WeightDistribution& b0);

// Closed-form binomial-approximation bound min{2^-l (1+beta)^n, 1};
// exactly zero when beta = 0.
BoundValue enc_fail_bound_binomial(std::size_t n, std::size_t l, double beta);

// Upper bound on recovery failure for the BDEC: masking term + erasure term.
BoundValue bdec_recovery_ub(const CodeShape& shape, double alpha, double beta,
                            const WeightDistribution& a, const WeightDistribution& b0);
// Closed-form surrogate 2^-l (1+beta)^n + 2^-r (1+alpha)^n (terms vanish at
// beta = 0 / alpha = 0 respectively).
BoundValue bdec_recovery_ub_binomial(const CodeShape& shape, double alpha, double beta);

enum class KktCase { interior, all_masking, all_error };

struct KktPoint {
    double l = 0.0, r = 0.0;
    KktCase active = KktCase::interior;
};

// Real-relaxation minimizer of the binomial BDEC surrogate.
KktPoint kkt_allocation(std::size_t n, std::size_t k, double alpha, double beta);

// Asymptotic achievability predicate for the BDEC: R0 > beta and
// R0 + R1 < 1 - alpha with R0 = l/n, R1 = k/n.
bool in_bdec_capacity_region(std::size_t n, std::size_t k, std::size_t l, double alpha,
                             double beta);

// Upper bound on recovery failure for the BDSC (two-step encoding plus
// bounded-distance decoding); every unmasked defect treated as an error.
BoundValue bdsc_recovery_ub(const CodeShape& shape, double p, double beta,
                            const WeightDistribution& b0);
// Estimate counting half of the unmasked defects as errors.
BoundValue bdsc_recovery_estimate(const CodeShape& shape, double p, double beta,
                                  const WeightDistribution& b0);

enum class ChannelKind { bdec, bdsc };
enum class BoundSelector {
    bdec_binomial,   // closed-form surrogate with binomial distributions
    bdec_exact,      // exact weight distributions (small codes only)
    bdsc_estimate,   // half-defect estimate (default for the BDSC)
    bdsc_bound,      // full upper bound
};

struct AllocationCandidate {
    std::size_t l = 0, r = 0;
    unsigned d0 = 0, d1 = 0;
    double value = 0.0;
    double log2_value = 0.0;
    bool chosen = false;
};

struct AllocationReport {
    std::size_t n = 0, k = 0;
    ChannelKind kind = ChannelKind::bdec;
    BoundSelector selector = BoundSelector::bdec_binomial;
    double alpha = 0.0, beta = 0.0, p = 0.0;
    std::vector<AllocationCandidate> candidates;
    std::size_t best_l = 0, best_r = 0;
    std::optional<KktPoint> kkt;  // populated for the BDEC surrogate

    std::string to_json() const;
    std::string to_csv() const;
};

// Evaluates the selected bound on every (l, r) candidate with l, r multiples
// of m and l + r = n - k; ties break toward smaller l.
AllocationReport allocate_discrete(std::size_t n, std::size_t k, unsigned m,
                                   ChannelKind kind, double alpha_or_p, double beta,
                                   BoundSelector selector,
                                   std::size_t exact_enum_cap = 26);

}  // namespace plbc::analysis
