#include "plbc/analysis/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "plbc/util/logdomain.hpp"

namespace plbc::analysis {

using util::Log2Sum;
using util::log2_binomial;
using util::log2_binomial_pmf;
using util::neg_inf;

CodeShape CodeShape::designed(std::size_t n, std::size_t k, std::size_t l, unsigned m) {
    if (l > n - k) throw std::invalid_argument("l exceeds total redundancy");
    CodeShape s;
    s.n = n;
    s.k = k;
    s.l = l;
    s.r = n - k - l;
    s.d0 = l == 0 ? 0 : unsigned(2 * (l / m) + 1);
    s.d1 = s.r == 0 ? 0 : unsigned(2 * (s.r / m) + 1);
    s.t0 = s.d0 == 0 ? 0 : (s.d0 - 1) / 2;
    s.t1 = s.d1 == 0 ? 0 : (s.d1 - 1) / 2;
    return s;
}

CodeShape CodeShape::of(const PartitionedCode& code) {
    CodeShape s;
    s.n = code.n;
    s.k = code.k;
    s.l = code.l;
    s.r = code.r;
    s.d0 = code.d0;
    s.d1 = code.d1;
    s.t0 = code.t0;
    s.t1 = code.t1;
    return s;
}

namespace {

BoundValue make_bound(double raw_log2, double masking_log2, double error_log2) {
    BoundValue b;
    b.log2_value = std::min(raw_log2, 0.0);
    b.value = b.log2_value == neg_inf ? 0.0 : std::exp2(b.log2_value);
    b.masking_log2 = masking_log2;
    b.error_log2 = error_log2;
    return b;
}

BoundValue zero_bound() { return make_bound(neg_inf, neg_inf, neg_inf); }

// log2 of sum_{w=d}^{limit} counts[w] * C(n-w, limit-w).
double covering_sum_log2(std::size_t n, unsigned d, std::size_t limit,
                         const WeightDistribution& dist) {
    Log2Sum sum;
    for (std::size_t w = d; w <= limit; ++w)
        sum.add(dist.log2_count(w) + log2_binomial(n - w, limit - w));
    return sum.log2();
}

// BSC tail table: tail[j] = log2 P(T >= j) for T ~ Binomial(n, p), j in [0, n+1].
std::vector<double> bsc_tail_log2(std::size_t n, double p) {
    std::vector<double> tail(n + 2, neg_inf);
    Log2Sum acc;
    for (std::size_t j = n + 1; j-- > 0;) {
        acc.add(log2_binomial_pmf(n, j, p));
        tail[j] = std::min(acc.log2(), 0.0);
    }
    return tail;
}

}  // namespace

ConditionalFail enc_fail_given_u(const CodeShape& shape, std::size_t u,
                                 const WeightDistribution& b0) {
    if (u > shape.n) throw std::invalid_argument("u exceeds code length");
    ConditionalFail out;
    // No defects, or fewer than d0: the masking system is always solvable.
    if (u == 0 || u < shape.d0) {
        out.regime = FailRegime::zero;
        out.bound = zero_bound();
        return out;
    }
    const double ratio_log2 =
        covering_sum_log2(shape.n, shape.d0, u, b0) - log2_binomial(shape.n, u);
    if (u <= std::size_t(shape.d0) + shape.t0) {
        out.regime = FailRegime::exact;
        out.bound = make_bound(ratio_log2 - 1.0, ratio_log2 - 1.0, neg_inf);
    } else {
        out.regime = FailRegime::upper;
        out.bound = make_bound(ratio_log2, ratio_log2, neg_inf);
    }
    return out;
}

BoundValue enc_fail_bound(const CodeShape& shape, double beta, const WeightDistribution& b0) {
    if (beta == 0.0) return zero_bound();
    Log2Sum sum;
    const double log2_beta = std::log2(beta);
    const double log2_1mb = beta < 1.0 ? std::log2(1.0 - beta) : neg_inf;
    // The u = 0 term is excluded even when d0 = 0: encoding with no defects
    // cannot fail.
    for (std::size_t u = std::max<std::size_t>(shape.d0, 1); u <= shape.n; ++u) {
        const double weight = double(u) * log2_beta + double(shape.n - u) * log2_1mb;
        if (weight == neg_inf) continue;
        sum.add(weight + covering_sum_log2(shape.n, shape.d0, u, b0));
    }
    return make_bound(sum.log2(), sum.log2(), neg_inf);
}

BoundValue enc_fail_bound_binomial(std::size_t n, std::size_t l, double beta) {
    if (beta == 0.0) return zero_bound();
    const double raw = -double(l) + double(n) * std::log2(1.0 + beta);
    return make_bound(raw, raw, neg_inf);
}

BoundValue bdec_recovery_ub(const CodeShape& shape, double alpha, double beta,
                            const WeightDistribution& a, const WeightDistribution& b0) {
    const double masking = enc_fail_bound(shape, beta, b0).masking_log2;
    Log2Sum erasure;
    if (alpha > 0.0) {
        const double log2_alpha = std::log2(alpha);
        const double log2_1ma = alpha < 1.0 ? std::log2(1.0 - alpha) : neg_inf;
        for (std::size_t e = std::max<std::size_t>(shape.d1, 1); e <= shape.n; ++e) {
            const double weight = double(e) * log2_alpha + double(shape.n - e) * log2_1ma;
            if (weight == neg_inf) continue;
            erasure.add(weight + covering_sum_log2(shape.n, shape.d1, e, a));
        }
    }
    const double total = util::log2_add(masking, erasure.log2());
    return make_bound(total, masking, erasure.log2());
}

BoundValue bdec_recovery_ub_binomial(const CodeShape& shape, double alpha, double beta) {
    const double masking = enc_fail_bound_binomial(shape.n, shape.l, beta).masking_log2;
    const double erasure =
        alpha == 0.0 ? neg_inf : -double(shape.r) + double(shape.n) * std::log2(1.0 + alpha);
    return make_bound(util::log2_add(masking, erasure), masking, erasure);
}

KktPoint kkt_allocation(std::size_t n, std::size_t k, double alpha, double beta) {
    if (k == 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
    const double total = double(n - k);
    KktPoint pt;
    // Degenerate channels: one term of the surrogate objective vanishes
    // identically, so all redundancy goes to the other side.
    if (beta == 0.0 && alpha > 0.0) {
        pt.l = 0.0;
        pt.r = total;
        pt.active = KktCase::all_error;
        return pt;
    }
    if (alpha == 0.0 && beta > 0.0) {
        pt.l = total;
        pt.r = 0.0;
        pt.active = KktCase::all_masking;
        return pt;
    }
    const double rate = double(k) / double(n);
    const double ratio = std::log2((1.0 + alpha) / (1.0 + beta));
    if (ratio > 1.0 - rate) {
        pt.l = 0.0;
        pt.r = total;
        pt.active = KktCase::all_error;
    } else if (ratio < -(1.0 - rate)) {
        pt.l = total;
        pt.r = 0.0;
        pt.active = KktCase::all_masking;
    } else {
        pt.l = 0.5 * (double(n) * (1.0 - ratio) - double(k));
        pt.r = 0.5 * (double(n) * (1.0 + ratio) - double(k));
        pt.active = KktCase::interior;
    }
    return pt;
}

bool in_bdec_capacity_region(std::size_t n, std::size_t k, std::size_t l, double alpha,
                             double beta) {
    const double r0 = double(l) / double(n);
    const double r1 = double(k) / double(n);
    return r0 > beta && r0 + r1 < 1.0 - alpha;
}

namespace {

// Shared skeleton of the BDSC bound and estimate; `tail_start` maps the
// defect count u to the first error weight that defeats the decoder.
template <typename TailStart>
BoundValue bdsc_failure_sum(const CodeShape& shape, double p, double beta,
                            const WeightDistribution& b0, TailStart tail_start) {
    const auto tail = bsc_tail_log2(shape.n, p);
    Log2Sum masking;
    if (beta > 0.0) {
        for (std::size_t u = std::max<std::size_t>(shape.d0, 1); u <= shape.n; ++u) {
            const double pmf = log2_binomial_pmf(shape.n, u, beta);
            if (pmf == neg_inf) continue;
            const double ratio = std::min(
                covering_sum_log2(shape.n, shape.d0, u, b0) - log2_binomial(shape.n, u), 0.0);
            const long start = tail_start(long(u));
            const std::size_t idx = std::size_t(std::max<long>(start, 0));
            if (idx > shape.n + 1) continue;
            masking.add(pmf + ratio + tail[std::min(idx, shape.n + 1)]);
        }
    }
    const double error_log2 = tail[std::min<std::size_t>(shape.t1 + 1, shape.n + 1)];
    const double total = util::log2_add(masking.log2(), error_log2);
    return make_bound(total, masking.log2(), error_log2);
}

}  // namespace

BoundValue bdsc_recovery_ub(const CodeShape& shape, double p, double beta,
                            const WeightDistribution& b0) {
    return bdsc_failure_sum(shape, p, beta, b0, [&](long u) {
        return long(shape.t1) + long(shape.d0) - u;
    });
}

BoundValue bdsc_recovery_estimate(const CodeShape& shape, double p, double beta,
                                  const WeightDistribution& b0) {
    return bdsc_failure_sum(shape, p, beta, b0, [&](long u) {
        const long unmasked = u - long(shape.d0) + 1;  // after step-2 masking
        const long half = (unmasked + 1) / 2;          // ceil(unmasked / 2)
        return long(shape.t1) - half + 1;
    });
}

AllocationReport allocate_discrete(std::size_t n, std::size_t k, unsigned m,
                                   ChannelKind kind, double alpha_or_p, double beta,
                                   BoundSelector selector, std::size_t exact_enum_cap) {
    if (n <= k) throw std::invalid_argument("need k < n");
    const std::size_t total = n - k;
    if (total % m != 0) throw std::invalid_argument("total redundancy must be a multiple of m");

    AllocationReport report;
    report.n = n;
    report.k = k;
    report.kind = kind;
    report.selector = selector;
    report.beta = beta;
    if (kind == ChannelKind::bdec)
        report.alpha = alpha_or_p;
    else
        report.p = alpha_or_p;

    double best_log2 = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t l = 0; l <= total; l += m) {
        const CodeShape shape = CodeShape::designed(n, k, l, m);
        BoundValue bound;
        switch (selector) {
            case BoundSelector::bdec_binomial:
                bound = bdec_recovery_ub_binomial(shape, alpha_or_p, beta);
                break;
            case BoundSelector::bdec_exact: {
                const PartitionedCode code = code::build_pbch(m, k, l);
                const auto b0 = code::weight_distribution_exact(
                    code, code::WeightTarget::dual_of_c0, exact_enum_cap);
                const auto a = code::weight_distribution_exact(
                    code, code::WeightTarget::full_c, exact_enum_cap);
                bound = bdec_recovery_ub(shape, alpha_or_p, beta, a, b0);
                break;
            }
            case BoundSelector::bdsc_estimate:
                bound = bdsc_recovery_estimate(shape, alpha_or_p, beta,
                                               WeightDistribution::binomial(n, l));
                break;
            case BoundSelector::bdsc_bound:
                bound = bdsc_recovery_ub(shape, alpha_or_p, beta,
                                         WeightDistribution::binomial(n, l));
                break;
        }
        AllocationCandidate cand;
        cand.l = l;
        cand.r = shape.r;
        cand.d0 = shape.d0;
        cand.d1 = shape.d1;
        cand.value = bound.value;
        cand.log2_value = bound.log2_value;
        if (cand.log2_value < best_log2) {  // strict: ties keep the smaller l
            best_log2 = cand.log2_value;
            best_index = report.candidates.size();
        }
        report.candidates.push_back(cand);
    }
    if (report.candidates.empty()) throw std::invalid_argument("empty candidate set");
    report.candidates[best_index].chosen = true;
    report.best_l = report.candidates[best_index].l;
    report.best_r = report.candidates[best_index].r;
    if (kind == ChannelKind::bdec)
        report.kkt = kkt_allocation(n, k, report.alpha, report.beta);
    return report;
}

namespace {

const char* kkt_case_name(KktCase c) {
    switch (c) {
        case KktCase::interior: return "interior";
        case KktCase::all_masking: return "all-l";
        case KktCase::all_error: return "all-r";
    }
    return "?";
}

}  // namespace

std::string AllocationReport::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["channel"] = kind == ChannelKind::bdec ? "bdec" : "bdsc";
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["p"] = p;
    j["candidates"] = nlohmann::json::array();
    for (const auto& c : candidates) {
        j["candidates"].push_back({{"l", c.l},
                                   {"r", c.r},
                                   {"d0", c.d0},
                                   {"d1", c.d1},
                                   {"bound", c.value},
                                   {"log2_bound", c.log2_value},
                                   {"chosen", c.chosen}});
    }
    j["best_l"] = best_l;
    j["best_r"] = best_r;
    if (kkt) {
        j["kkt"] = {{"l", kkt->l}, {"r", kkt->r}, {"case", kkt_case_name(kkt->active)}};
    }
    return j.dump(2);
}

std::string AllocationReport::to_csv() const {
    std::ostringstream out;
    out << "l,r,d0,d1,bound,log2_bound,chosen\n";
    for (const auto& c : candidates) {
        out << c.l << ',' << c.r << ',' << c.d0 << ',' << c.d1 << ',' << c.value << ','
            << c.log2_value << ',' << (c.chosen ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace plbc::analysis
