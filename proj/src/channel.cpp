#include "plbc/channel/channel.hpp"

#include <bit>
#include <stdexcept>

#include "plbc/util/logdomain.hpp"

namespace plbc::channel {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Rng::next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform bound must be positive");
    // Rejection sampling for an unbiased draw.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

Rng make_stream_rng(std::uint64_t master_seed, Stream stream, std::uint64_t index) {
    std::uint64_t x = master_seed;
    std::uint64_t a = splitmix64(x);
    x ^= std::uint64_t(stream) * 0xd1342543de82ef95ULL;
    std::uint64_t b = splitmix64(x);
    x ^= index * 0x2545f4914f6cdd1dULL;
    std::uint64_t c = splitmix64(x);
    return Rng(a ^ b ^ c);
}

void ChannelParams::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must be in [0,1]");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0,1]");
    if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("p must be in [0,0.5]");
}

std::vector<std::size_t> ChannelState::defect_locations() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i] != CellState::normal) out.push_back(i);
    return out;
}

std::size_t ChannelState::defect_count() const {
    std::size_t count = 0;
    for (CellState c : cells)
        if (c != CellState::normal) ++count;
    return count;
}

BitVec ChannelState::stuck_values(const std::vector<std::size_t>& locations) const {
    BitVec v(locations.size());
    for (std::size_t i = 0; i < locations.size(); ++i)
        if (cells[locations[i]] == CellState::stuck1) v.set(i, true);
    return v;
}

std::vector<std::size_t> ReceivedWord::unerased_locations() const {
    std::vector<std::size_t> out;
    if (erased.empty()) {
        out.resize(size());
        for (std::size_t i = 0; i < size(); ++i) out[i] = i;
        return out;
    }
    for (std::size_t i = 0; i < size(); ++i)
        if (!erased[i]) out.push_back(i);
    return out;
}

ChannelState sample_state(std::size_t n, double beta, Rng& rng) {
    ChannelState s;
    s.cells.resize(n, CellState::normal);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(beta))
            s.cells[i] = rng.bernoulli(0.5) ? CellState::stuck1 : CellState::stuck0;
    }
    return s;
}

BitVec apply_defects(const BitVec& codeword, const ChannelState& s) {
    if (codeword.size() != s.size()) throw std::invalid_argument("length mismatch");
    BitVec out = codeword;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.cells[i] == CellState::stuck0)
            out.set(i, false);
        else if (s.cells[i] == CellState::stuck1)
            out.set(i, true);
    }
    return out;
}

ReceivedWord apply_erasures(const BitVec& word, double alpha, Rng& rng) {
    ReceivedWord out;
    out.symbols = word;
    out.erased.assign(word.size(), false);
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (rng.bernoulli(alpha)) {
            out.erased[i] = true;
            out.symbols.set(i, false);
        }
    }
    return out;
}

ReceivedWord apply_bsc(const BitVec& word, double p, Rng& rng) {
    ReceivedWord out;
    out.symbols = word;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (rng.bernoulli(p)) out.symbols.flip(i);
    return out;
}

Capacities capacities(const ChannelParams& params) {
    params.validate();
    const double alpha = params.alpha, beta = params.beta, p = params.p;
    Capacities c;
    c.bdc = 1.0 - beta;
    c.bdec_masked = (1.0 - beta) * (1.0 - alpha);
    c.bdec_enc = 1.0 - alpha - beta;
    const double hp = util::binary_entropy(p);
    c.bdsc_masked = (1.0 - beta) * (1.0 - hp);
    c.p_tilde = (1.0 - beta) * p + beta / 2.0;
    c.bdsc_min = 1.0 - util::binary_entropy(c.p_tilde);
    c.bdsc_lower = 1.0 - beta - hp;
    c.bdsc_upper = (1.0 - beta) * (1.0 - hp);
    return c;
}

std::vector<std::pair<std::string, ChannelParams>> bdec_presets() {
    // Seven BDEC channels sharing capacity 0.96.
    return {
        {"bdec:ch1", {.beta = 0.000, .alpha = 0.040}},
        {"bdec:ch2", {.beta = 0.005, .alpha = 0.035}},
        {"bdec:ch3", {.beta = 0.015, .alpha = 0.025}},
        {"bdec:ch4", {.beta = 0.020, .alpha = 0.020}},
        {"bdec:ch5", {.beta = 0.025, .alpha = 0.015}},
        {"bdec:ch6", {.beta = 0.035, .alpha = 0.005}},
        {"bdec:ch7", {.beta = 0.040, .alpha = 0.000}},
    };
}

std::vector<std::pair<std::string, ChannelParams>> bdsc_presets() {
    // Seven BDSC channels sharing p_tilde ~ 4e-3.
    return {
        {"bdsc:ch1", {.beta = 0.0e-3, .p = 4.0e-3}},
        {"bdsc:ch2", {.beta = 2.0e-3, .p = 3.0e-3}},
        {"bdsc:ch3", {.beta = 3.0e-3, .p = 2.5e-3}},
        {"bdsc:ch4", {.beta = 4.0e-3, .p = 2.0e-3}},
        {"bdsc:ch5", {.beta = 6.0e-3, .p = 1.0e-3}},
        {"bdsc:ch6", {.beta = 7.0e-3, .p = 5.0e-4}},
        {"bdsc:ch7", {.beta = 8.0e-3, .p = 0.0}},
    };
}

std::optional<ChannelParams> channel_preset(const std::string& name) {
    for (const auto& [key, params] : bdec_presets())
        if (key == name) return params;
    for (const auto& [key, params] : bdsc_presets())
        if (key == name) return params;
    return std::nullopt;
}

}  // namespace plbc::channel
