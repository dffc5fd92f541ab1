#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plbc/gf2/bitvec.hpp"

namespace plbc::channel {

using gf2::BitVec;

// xoshiro256** seeded through splitmix64; fully specified so that trial
// streams replay bit-identically on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    // Uniform in [0, 1) with 53 bits.
    double next_double();
    bool bernoulli(double p) { return next_double() < p; }
    // Uniform in [0, bound)
    std::uint64_t uniform(std::uint64_t bound);

private:
    std::uint64_t s_[4];
};

// Named substreams so any trial is replayable from (seed, stream, index).
enum class Stream : std::uint64_t {
    state = 1,
    erasure = 2,
    bsc = 3,
    message = 4,
    step2 = 5,
};

Rng make_stream_rng(std::uint64_t master_seed, Stream stream, std::uint64_t index);

struct ChannelParams {
    double beta = 0.0;   // defect probability
    double alpha = 0.0;  // erasure probability (BDEC)
    double p = 0.0;      // crossover probability (BDSC)

    void validate() const;  // throws std::invalid_argument on out-of-range values
};

enum class CellState : std::uint8_t { stuck0 = 0, stuck1 = 1, normal = 2 };

struct ChannelState {
    std::vector<CellState> cells;

    std::size_t size() const { return cells.size(); }
    std::vector<std::size_t> defect_locations() const;
    std::size_t defect_count() const;
    // Stuck values at the given (ascending) locations, packed.
    BitVec stuck_values(const std::vector<std::size_t>& locations) const;
};

struct ReceivedWord {
    BitVec symbols;            // erased positions carry arbitrary bit values
    std::vector<bool> erased;  // empty means "no erasures" (BDSC mode)

    std::size_t size() const { return symbols.size(); }
    std::vector<std::size_t> unerased_locations() const;
};

// i.i.d. cells: P(normal) = 1 - beta, P(stuck0) = P(stuck1) = beta / 2.
ChannelState sample_state(std::size_t n, double beta, Rng& rng);

// Component-wise overwrite of c by the stuck values of s.
BitVec apply_defects(const BitVec& codeword, const ChannelState& s);

// Erase each symbol independently with probability alpha.
ReceivedWord apply_erasures(const BitVec& word, double alpha, Rng& rng);
// Flip each symbol independently with probability p.
ReceivedWord apply_bsc(const BitVec& word, double p, Rng& rng);

struct Capacities {
    double bdc;              // 1 - beta
    double bdec_masked;      // (1-beta)(1-alpha), defects never erased
    double bdec_enc;         // 1 - alpha - beta, encoder-only defect knowledge
    double bdsc_masked;      // (1-beta)(1-h(p))
    double bdsc_min;         // 1 - h(p_tilde), no defect knowledge anywhere
    double p_tilde;          // (1-beta) p + beta/2
    double bdsc_lower;       // 1 - beta - h(p)
    double bdsc_upper;       // (1-beta)(1-h(p))
};

Capacities capacities(const ChannelParams& params);

// Named presets "bdec:ch1".."bdec:ch7", "bdsc:ch1".."bdsc:ch7".
std::optional<ChannelParams> channel_preset(const std::string& name);
std::vector<std::pair<std::string, ChannelParams>> bdec_presets();
std::vector<std::pair<std::string, ChannelParams>> bdsc_presets();

}  // namespace plbc::channel
