#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plbc/analysis/bounds.hpp"
#include "plbc/codec/codec.hpp"

namespace plbc::sim {

using channel::ChannelParams;
using code::PartitionedCode;

struct RateCi {
    double rate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson 95% score interval.
RateCi wilson_interval(std::uint64_t failures, std::uint64_t trials);

struct TrialTally {
    std::uint64_t trials = 0;
    std::uint64_t enc_fail = 0;     // E = 0
    std::uint64_t rec_fail = 0;     // m-hat != m
    std::uint64_t rec_fail_e0 = 0;  // failed with E = 0
    std::uint64_t rec_fail_e1 = 0;  // failed despite E = 1

    void merge(const TrialTally& other);
    RateCi enc_fail_ci() const { return wilson_interval(enc_fail, trials); }
    RateCi rec_fail_ci() const { return wilson_interval(rec_fail, trials); }

    std::string to_csv() const;  // header + one row
    std::string to_json() const;
};

enum class SimMode {
    enc_fail_u,  // fixed defect count, one-step encoding, count E = 0
    enc_fail,    // random state, one-step encoding, count E = 0
    bdec,        // one-step encoding + erasures + ML decoding
    bdsc,        // two-step encoding + bit flips + bounded-distance decoding
};

struct ExperimentConfig {
    SimMode mode = SimMode::bdec;
    ChannelParams params;
    std::size_t fixed_u = 0;  // enc_fail_u only
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    bool noise_on_defects = true;
    // Stop once this many failures accumulate, checked at shard boundaries in
    // shard order; 0 runs every trial.
    std::uint64_t target_failures = 0;
};

// Worker cap: DEFECTCODES_THREADS when set, hardware concurrency otherwise.
std::size_t worker_count();

// Runs the configured experiment; bit-identical for a fixed (config, seed)
// regardless of the worker count.
TrialTally run_experiment(const PartitionedCode& code, const ExperimentConfig& config);

TrialTally run_enc_fail_given_u(const PartitionedCode& code, std::size_t u,
                                std::uint64_t trials, std::uint64_t seed);
TrialTally run_bdec(const PartitionedCode& code, const ChannelParams& params,
                    std::uint64_t trials, std::uint64_t seed);
TrialTally run_bdsc(const PartitionedCode& code, const ChannelParams& params,
                    std::uint64_t trials, std::uint64_t seed);

struct SweepRow {
    std::size_t l = 0, r = 0;
    unsigned d0 = 0, d1 = 0;
    double analytic = 0.0;
    TrialTally tally;
    std::uint64_t failures = 0;  // failure count matching the mode
    bool reached = false;        // at least one failure observed
    RateCi ci;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t best_index = 0;  // argmin of the empirical rate among reached rows

    std::string to_csv() const;
    std::string to_json() const;
};

// One row per (l, r) candidate with l, r multiples of m summing to n - k.
// Analytic column: closed-form binomial bound for enc_fail modes, the
// binomial BDEC bound, or the BDSC estimate. Candidates use independent
// derived seeds.
SweepResult sweep(unsigned m, std::size_t k, const ExperimentConfig& base);

}  // namespace plbc::sim
