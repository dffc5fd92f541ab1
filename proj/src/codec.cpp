#include "plbc/codec/codec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace plbc::codec {

namespace {

std::size_t count_unmasked(const BitVec& codeword, const ChannelState& state) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state.cells[i] == channel::CellState::stuck0 && codeword.get(i)) ++count;
        if (state.cells[i] == channel::CellState::stuck1 && !codeword.get(i)) ++count;
    }
    return count;
}

EncodeOutcome finish_outcome(const PartitionedCode& code, const BitVec& c1, BitVec d,
                             const ChannelState& state) {
    EncodeOutcome out;
    out.codeword = c1;
    if (code.l > 0) out.codeword ^= code.g0.mul_vec(d);
    out.d = std::move(d);
    out.unmasked_count = count_unmasked(out.codeword, state);
    out.success = out.unmasked_count == 0;
    return out;
}

// b^U restricted to the given defect locations: (G1 m + s)^U.
BitVec masking_rhs(const BitVec& c1, const ChannelState& state,
                   const std::vector<std::size_t>& locations) {
    BitVec b(locations.size());
    for (std::size_t i = 0; i < locations.size(); ++i) {
        bool stuck = state.cells[locations[i]] == channel::CellState::stuck1;
        if (c1.get(locations[i]) != stuck) b.set(i, true);
    }
    return b;
}

}  // namespace

EncodeOutcome encode_onestep(const PartitionedCode& code, const BitVec& message,
                             const ChannelState& state) {
    if (message.size() != code.k) throw std::invalid_argument("message length mismatch");
    if (state.size() != code.n) throw std::invalid_argument("state length mismatch");
    const BitVec c1 = code.g1.mul_vec(message);
    const auto locations = state.defect_locations();
    BitVec d(code.l);
    if (!locations.empty() && code.l > 0) {
        const auto g0_sub = code.g0.select_rows(locations);
        if (auto solved = g0_sub.solve_consistent(masking_rhs(c1, state, locations)))
            d = std::move(*solved);
    }
    return finish_outcome(code, c1, std::move(d), state);
}

EncodeOutcome encode_twostep(const PartitionedCode& code, const BitVec& message,
                             const ChannelState& state, Rng& rng) {
    if (message.size() != code.k) throw std::invalid_argument("message length mismatch");
    if (state.size() != code.n) throw std::invalid_argument("state length mismatch");
    const BitVec c1 = code.g1.mul_vec(message);
    const auto locations = state.defect_locations();
    BitVec d(code.l);
    if (!locations.empty() && code.l > 0) {
        const auto g0_sub = code.g0.select_rows(locations);
        if (auto solved = g0_sub.solve_consistent(masking_rhs(c1, state, locations))) {
            return finish_outcome(code, c1, std::move(*solved), state);
        }
        // Step 2: mask d0 - 1 defect locations chosen uniformly at random.
        const std::size_t pick = code.d0 - 1;  // step 2 is only reachable when u >= d0
        std::vector<std::size_t> pool = locations;
        for (std::size_t i = 0; i < pick; ++i)
            std::swap(pool[i], pool[i + rng.uniform(pool.size() - i)]);
        std::vector<std::size_t> subset(pool.begin(), pool.begin() + pick);
        std::sort(subset.begin(), subset.end());
        auto solved = code.g0.select_rows(subset).solve_consistent(
            masking_rhs(c1, state, subset));
        if (!solved) throw std::logic_error("step-2 system must be solvable for u' < d0");
        // Keep whichever of the step-2 solution and the d = 0 fallback leaves
        // fewer unmasked defects, so two-step never does worse than one-step.
        EncodeOutcome masked = finish_outcome(code, c1, std::move(*solved), state);
        EncodeOutcome plain = finish_outcome(code, c1, BitVec(code.l), state);
        return masked.unmasked_count <= plain.unmasked_count ? masked : plain;
    }
    return finish_outcome(code, c1, std::move(d), state);
}

EncodeOutcome mde_exhaustive(const PartitionedCode& code, const BitVec& message,
                             const ChannelState& state) {
    if (code.l > 20) throw std::invalid_argument("MDE oracle limited to l <= 20");
    if (message.size() != code.k) throw std::invalid_argument("message length mismatch");
    const BitVec c1 = code.g1.mul_vec(message);
    const auto locations = state.defect_locations();
    if (code.l == 0 || locations.empty())
        return finish_outcome(code, c1, BitVec(code.l), state);

    const auto g0_sub = code.g0.select_rows(locations);
    // Gray-code walk over all d; track G0^U d + b^U.
    std::vector<BitVec> cols(code.l);
    for (std::size_t j = 0; j < code.l; ++j) cols[j] = g0_sub.column(j);
    BitVec current = masking_rhs(c1, state, locations);
    std::uint64_t best_gray = 0;
    std::size_t best_cost = current.popcount();
    std::uint64_t gray = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << code.l); ++i) {
        const unsigned flip = unsigned(std::countr_zero(i));
        current ^= cols[flip];
        gray ^= std::uint64_t(1) << flip;
        const std::size_t cost = current.popcount();
        if (cost < best_cost) {
            best_cost = cost;
            best_gray = gray;
        }
    }
    BitVec d(code.l);
    for (std::size_t j = 0; j < code.l; ++j)
        if ((best_gray >> j) & 1) d.set(j, true);
    return finish_outcome(code, c1, std::move(d), state);
}

DecodeOutcome decode_bdec_ml(const PartitionedCode& code, const ReceivedWord& received) {
    if (received.size() != code.n) throw std::invalid_argument("received length mismatch");
    const auto unerased = received.unerased_locations();
    const gf2::BitMatrix g_tilde = code.g1.augmented(code.g0);
    const gf2::BitMatrix system = g_tilde.select_rows(unerased);

    DecodeOutcome out;
    // m-hat is unique iff no homogeneous solution touches the message block.
    const gf2::BitMatrix null_basis = system.nullspace_basis();
    for (std::size_t j = 0; j < null_basis.cols(); ++j)
        for (std::size_t i = 0; i < code.k; ++i)
            if (null_basis.get(i, j)) {
                out.detail = DecodeDetail::ambiguous;
                return out;
            }

    BitVec rhs(unerased.size());
    for (std::size_t i = 0; i < unerased.size(); ++i)
        if (received.symbols.get(unerased[i])) rhs.set(i, true);
    auto solved = system.solve_consistent(rhs);
    if (!solved) {
        out.detail = DecodeDetail::inconsistent;
        return out;
    }
    out.message = BitVec(code.k);
    for (std::size_t i = 0; i < code.k; ++i)
        if (solved->get(i)) out.message.set(i, true);
    out.detail = DecodeDetail::ok;
    return out;
}

DecodeOutcome decode_bdsc_bdd(const PartitionedCode& code, const BitVec& received) {
    if (received.size() != code.n) throw std::invalid_argument("received length mismatch");
    DecodeOutcome out;

    BitVec corrected = received;
    if (code.r > 0) {
        const gf2::BinaryField field = code.field();
        const std::uint32_t order = field.order();
        const unsigned num_syndromes = 2 * code.t1;

        // S_j = y(alpha^j), accumulated over the support of y.
        std::vector<std::uint32_t> syndrome(num_syndromes + 1, 0);
        bool all_zero = true;
        const auto support = received.ones();
        for (unsigned j = 1; j <= num_syndromes; ++j) {
            std::uint32_t acc = 0;
            for (std::size_t i : support)
                acc ^= field.alpha_power((long long)(i) * j % order);
            syndrome[j] = acc;
            if (acc) all_zero = false;
        }

        if (!all_zero) {
            // Berlekamp-Massey for the error locator sigma(x).
            std::vector<std::uint32_t> sigma = {1};
            std::vector<std::uint32_t> prev = {1};
            std::uint32_t prev_disc = 1;
            unsigned lfsr_len = 0, gap = 1;
            for (unsigned i = 1; i <= num_syndromes; ++i) {
                std::uint32_t disc = syndrome[i];
                for (unsigned j = 1; j <= lfsr_len && j < sigma.size(); ++j)
                    disc ^= field.mul(sigma[j], syndrome[i - j]);
                if (disc == 0) {
                    ++gap;
                    continue;
                }
                std::vector<std::uint32_t> next = sigma;
                const std::uint32_t factor = field.div(disc, prev_disc);
                if (next.size() < prev.size() + gap) next.resize(prev.size() + gap, 0);
                for (std::size_t j = 0; j < prev.size(); ++j)
                    next[j + gap] ^= field.mul(factor, prev[j]);
                if (2 * lfsr_len <= i - 1) {
                    prev = std::move(sigma);
                    prev_disc = disc;
                    lfsr_len = i - lfsr_len;
                    gap = 1;
                } else {
                    ++gap;
                }
                sigma = std::move(next);
            }
            while (!sigma.empty() && sigma.back() == 0) sigma.pop_back();
            const std::size_t degree = sigma.size() - 1;
            if (lfsr_len > code.t1 || degree != lfsr_len) {
                out.detail = DecodeDetail::weight_overflow;
                return out;
            }
            // Chien search: sigma(alpha^j) = 0 puts an error at n - j (mod n).
            std::vector<std::size_t> error_positions;
            for (std::uint32_t j = 0; j < order; ++j) {
                std::uint32_t acc = 0;
                for (std::size_t c = 0; c < sigma.size(); ++c) {
                    if (sigma[c] == 0) continue;
                    acc ^= field.mul(sigma[c], field.alpha_power((long long)(j) * c % order));
                }
                if (acc == 0) error_positions.push_back((order - j) % order);
            }
            if (error_positions.size() != degree) {
                out.detail = DecodeDetail::weight_overflow;
                return out;
            }
            for (std::size_t pos : error_positions) corrected.flip(pos);
        }
    }

    out.message = code.g1_inv.mul_transposed_vec(corrected);
    out.detail = DecodeDetail::ok;
    return out;
}

}  // namespace plbc::codec
