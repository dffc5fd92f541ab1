#include "plbc/sim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace plbc::sim {

using channel::CellState;
using channel::ChannelState;
using channel::make_stream_rng;
using channel::ReceivedWord;
using channel::Rng;
using channel::Stream;
using gf2::BitVec;

RateCi wilson_interval(std::uint64_t failures, std::uint64_t trials) {
    RateCi ci;
    if (trials == 0) return ci;
    const double z = 1.959963984540054;  // 95%
    const double n = double(trials);
    const double phat = double(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    ci.rate = phat;
    ci.lo = std::max(0.0, (center - half) / denom);
    ci.hi = std::min(1.0, (center + half) / denom);
    return ci;
}

void TrialTally::merge(const TrialTally& other) {
    trials += other.trials;
    enc_fail += other.enc_fail;
    rec_fail += other.rec_fail;
    rec_fail_e0 += other.rec_fail_e0;
    rec_fail_e1 += other.rec_fail_e1;
}

std::string TrialTally::to_csv() const {
    std::ostringstream out;
    out << "trials,enc_fail,rec_fail,rec_fail_e0,rec_fail_e1\n"
        << trials << ',' << enc_fail << ',' << rec_fail << ',' << rec_fail_e0 << ','
        << rec_fail_e1 << '\n';
    return out.str();
}

std::string TrialTally::to_json() const {
    nlohmann::json j;
    j["trials"] = trials;
    j["enc_fail"] = enc_fail;
    j["rec_fail"] = rec_fail;
    j["rec_fail_e0"] = rec_fail_e0;
    j["rec_fail_e1"] = rec_fail_e1;
    const RateCi enc = enc_fail_ci();
    const RateCi rec = rec_fail_ci();
    j["enc_fail_rate"] = {{"rate", enc.rate}, {"ci_lo", enc.lo}, {"ci_hi", enc.hi}};
    j["rec_fail_rate"] = {{"rate", rec.rate}, {"ci_lo", rec.lo}, {"ci_hi", rec.hi}};
    return j.dump(2);
}

std::size_t worker_count() {
    if (const char* env = std::getenv("DEFECTCODES_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return std::size_t(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

constexpr std::uint64_t kShardSize = 4096;

BitVec random_bits(std::size_t n, Rng& rng) {
    BitVec v(n);
    for (std::size_t w = 0; w < v.num_words(); ++w) v.data()[w] = rng.next_u64();
    if (n & 63) v.data()[v.num_words() - 1] &= (std::uint64_t(1) << (n & 63)) - 1;
    return v;
}

// Uniform state with exactly u defects: partial Fisher-Yates for the defect
// set, fair coins for the stuck values.
ChannelState sample_state_fixed_u(std::size_t n, std::size_t u, Rng& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    ChannelState state;
    state.cells.assign(n, CellState::normal);
    for (std::size_t i = 0; i < u; ++i) {
        std::swap(pool[i], pool[i + rng.uniform(n - i)]);
        state.cells[pool[i]] = rng.bernoulli(0.5) ? CellState::stuck1 : CellState::stuck0;
    }
    return state;
}

ReceivedWord erase_word(const BitVec& word, const ChannelState& state, double alpha, Rng& rng,
                        bool noise_on_defects) {
    ReceivedWord out;
    out.symbols = word;
    out.erased.assign(word.size(), false);
    for (std::size_t i = 0; i < word.size(); ++i) {
        const bool hit = rng.bernoulli(alpha);
        if (!hit) continue;
        if (!noise_on_defects && state.cells[i] != CellState::normal) continue;
        out.erased[i] = true;
        out.symbols.set(i, false);
    }
    return out;
}

BitVec flip_word(const BitVec& word, const ChannelState& state, double p, Rng& rng,
                 bool noise_on_defects) {
    BitVec out = word;
    for (std::size_t i = 0; i < word.size(); ++i) {
        const bool hit = rng.bernoulli(p);
        if (!hit) continue;
        if (!noise_on_defects && state.cells[i] != CellState::normal) continue;
        out.flip(i);
    }
    return out;
}

void run_trial(const PartitionedCode& code, const ExperimentConfig& cfg, std::uint64_t index,
               TrialTally& tally) {
    Rng msg_rng = make_stream_rng(cfg.seed, Stream::message, index);
    const BitVec message = random_bits(code.k, msg_rng);
    Rng state_rng = make_stream_rng(cfg.seed, Stream::state, index);

    ++tally.trials;
    switch (cfg.mode) {
        case SimMode::enc_fail_u: {
            const ChannelState state = sample_state_fixed_u(code.n, cfg.fixed_u, state_rng);
            if (!codec::encode_onestep(code, message, state).success) ++tally.enc_fail;
            break;
        }
        case SimMode::enc_fail: {
            const ChannelState state = channel::sample_state(code.n, cfg.params.beta, state_rng);
            if (!codec::encode_onestep(code, message, state).success) ++tally.enc_fail;
            break;
        }
        case SimMode::bdec: {
            const ChannelState state = channel::sample_state(code.n, cfg.params.beta, state_rng);
            const auto enc = codec::encode_onestep(code, message, state);
            if (!enc.success) {
                // An unmasked defect already corrupts the codeword; ML erasure
                // decoding cannot be trusted, so E = 0 counts as failure.
                ++tally.enc_fail;
                ++tally.rec_fail;
                ++tally.rec_fail_e0;
                break;
            }
            Rng erasure_rng = make_stream_rng(cfg.seed, Stream::erasure, index);
            const ReceivedWord y =
                erase_word(channel::apply_defects(enc.codeword, state), state, cfg.params.alpha,
                           erasure_rng, cfg.noise_on_defects);
            const auto dec = codec::decode_bdec_ml(code, y);
            if (!dec.ok() || dec.message != message) {
                ++tally.rec_fail;
                ++tally.rec_fail_e1;
            }
            break;
        }
        case SimMode::bdsc: {
            const ChannelState state = channel::sample_state(code.n, cfg.params.beta, state_rng);
            Rng step2_rng = make_stream_rng(cfg.seed, Stream::step2, index);
            const auto enc = codec::encode_twostep(code, message, state, step2_rng);
            if (!enc.success) ++tally.enc_fail;
            Rng bsc_rng = make_stream_rng(cfg.seed, Stream::bsc, index);
            const BitVec y = flip_word(channel::apply_defects(enc.codeword, state), state,
                                       cfg.params.p, bsc_rng, cfg.noise_on_defects);
            const auto dec = codec::decode_bdsc_bdd(code, y);
            if (!dec.ok() || dec.message != message) {
                ++tally.rec_fail;
                if (enc.success)
                    ++tally.rec_fail_e1;
                else
                    ++tally.rec_fail_e0;
            }
            break;
        }
    }
}

TrialTally run_shard(const PartitionedCode& code, const ExperimentConfig& cfg,
                     std::uint64_t begin, std::uint64_t count) {
    TrialTally tally;
    for (std::uint64_t i = 0; i < count; ++i) run_trial(code, cfg, begin + i, tally);
    return tally;
}

std::uint64_t stop_counter(const ExperimentConfig& cfg, const TrialTally& tally) {
    return cfg.mode == SimMode::bdec || cfg.mode == SimMode::bdsc ? tally.rec_fail
                                                                  : tally.enc_fail;
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

}  // namespace

TrialTally run_experiment(const PartitionedCode& code, const ExperimentConfig& cfg) {
    if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");
    if (cfg.mode == SimMode::enc_fail_u && cfg.fixed_u > code.n)
        throw std::invalid_argument("fixed u exceeds code length");
    cfg.params.validate();

    const std::uint64_t shards = (cfg.trials + kShardSize - 1) / kShardSize;
    const std::size_t workers = std::min<std::uint64_t>(worker_count(), shards);

    TrialTally total;
    bool stopped = false;
    // Waves of shards; merge in shard order so the early-stop decision does
    // not depend on the worker count.
    for (std::uint64_t wave = 0; wave < shards && !stopped; wave += workers) {
        const std::uint64_t in_wave = std::min<std::uint64_t>(workers, shards - wave);
        std::vector<std::future<TrialTally>> futures;
        futures.reserve(in_wave);
        for (std::uint64_t s = 0; s < in_wave; ++s) {
            const std::uint64_t begin = (wave + s) * kShardSize;
            const std::uint64_t count = std::min<std::uint64_t>(kShardSize, cfg.trials - begin);
            futures.push_back(std::async(workers > 1 ? std::launch::async
                                                     : std::launch::deferred,
                                         run_shard, std::cref(code), std::cref(cfg), begin,
                                         count));
        }
        for (auto& f : futures) {
            TrialTally shard = f.get();
            if (stopped) continue;  // later shards are dropped once we stop
            total.merge(shard);
            if (cfg.target_failures > 0 && stop_counter(cfg, total) >= cfg.target_failures)
                stopped = true;
        }
    }
    return total;
}

TrialTally run_enc_fail_given_u(const PartitionedCode& code, std::size_t u,
                                std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.mode = SimMode::enc_fail_u;
    cfg.fixed_u = u;
    cfg.trials = trials;
    cfg.seed = seed;
    return run_experiment(code, cfg);
}

TrialTally run_bdec(const PartitionedCode& code, const ChannelParams& params,
                    std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.mode = SimMode::bdec;
    cfg.params = params;
    cfg.trials = trials;
    cfg.seed = seed;
    return run_experiment(code, cfg);
}

TrialTally run_bdsc(const PartitionedCode& code, const ChannelParams& params,
                    std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.mode = SimMode::bdsc;
    cfg.params = params;
    cfg.trials = trials;
    cfg.seed = seed;
    return run_experiment(code, cfg);
}

std::string SweepResult::to_csv() const {
    std::ostringstream out;
    out << "l,r,d0,d1,analytic,empirical,ci_lo,ci_hi,trials,failures\n";
    for (const auto& row : rows) {
        out << row.l << ',' << row.r << ',' << row.d0 << ',' << row.d1 << ',' << row.analytic
            << ',';
        if (row.reached)
            out << row.ci.rate << ',' << row.ci.lo << ',' << row.ci.hi;
        else
            out << ",,";  // unreached: analytic-only row
        out << ',' << row.tally.trials << ',' << row.failures << '\n';
    }
    return out.str();
}

std::string SweepResult::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json e;
        e["l"] = row.l;
        e["r"] = row.r;
        e["d0"] = row.d0;
        e["d1"] = row.d1;
        e["analytic"] = row.analytic;
        if (row.reached) {
            e["empirical"] = row.ci.rate;
            e["ci_lo"] = row.ci.lo;
            e["ci_hi"] = row.ci.hi;
        } else {
            e["empirical"] = nullptr;
        }
        e["trials"] = row.tally.trials;
        e["failures"] = row.failures;
        j.push_back(e);
    }
    return j.dump(2);
}

SweepResult sweep(unsigned m, std::size_t k, const ExperimentConfig& base) {
    const std::size_t n = (std::size_t(1) << m) - 1;
    if (k >= n) throw std::invalid_argument("need k < n");
    const std::size_t total = n - k;
    if (total % m != 0) throw std::invalid_argument("total redundancy must be a multiple of m");

    SweepResult result;
    double best_rate = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l <= total; l += m) {
        const PartitionedCode code = code::build_pbch(m, k, l);
        const auto shape = analysis::CodeShape::of(code);

        SweepRow row;
        row.l = l;
        row.r = code.r;
        row.d0 = code.d0;
        row.d1 = code.d1;
        switch (base.mode) {
            case SimMode::enc_fail_u:
                row.analytic = analysis::enc_fail_given_u(
                                   shape, base.fixed_u,
                                   code::WeightDistribution::binomial(n, l))
                                   .bound.value;
                break;
            case SimMode::enc_fail:
                row.analytic =
                    analysis::enc_fail_bound_binomial(n, l, base.params.beta).value;
                break;
            case SimMode::bdec:
                row.analytic =
                    analysis::bdec_recovery_ub_binomial(shape, base.params.alpha,
                                                        base.params.beta)
                        .value;
                break;
            case SimMode::bdsc:
                row.analytic = analysis::bdsc_recovery_estimate(
                                   shape, base.params.p, base.params.beta,
                                   code::WeightDistribution::binomial(n, l))
                                   .value;
                break;
        }

        ExperimentConfig cfg = base;
        cfg.seed = mix64(base.seed ^ mix64(l + 1));  // independent per-candidate streams
        row.tally = run_experiment(code, cfg);
        row.failures = stop_counter(cfg, row.tally);
        row.reached = row.failures > 0;
        row.ci = wilson_interval(row.failures, row.tally.trials);
        if (row.reached && row.ci.rate < best_rate) {
            best_rate = row.ci.rate;
            result.best_index = result.rows.size();
        }
        result.rows.push_back(row);
    }
    return result;
}

}  // namespace plbc::sim
