#pragma once

#include <cstddef>

#include "plbc/channel/channel.hpp"
#include "plbc/code/pbch.hpp"

namespace plbc::codec {

using channel::ChannelState;
using channel::ReceivedWord;
using channel::Rng;
using code::PartitionedCode;
using gf2::BitVec;

struct EncodeOutcome {
    BitVec codeword;             // length n
    BitVec d;                    // length l, chosen masking vector
    bool success = false;        // E = 1 iff every stuck cell agrees with the codeword
    std::size_t unmasked_count = 0;  // ||c o s - c||
};

enum class DecodeDetail { ok, inconsistent, ambiguous, weight_overflow };

struct DecodeOutcome {
    BitVec message;  // length k, valid iff detail == ok
    DecodeDetail detail = DecodeDetail::ok;

    bool ok() const { return detail == DecodeDetail::ok; }
};

// Solve G0^U d = b^U once; failure leaves d = 0.
EncodeOutcome encode_onestep(const PartitionedCode& code, const BitVec& message,
                             const ChannelState& state);

// Two-step encoding: on step-1 failure, mask a uniformly chosen set of
// d0 - 1 defect locations (always solvable), reducing the residual stuck-at
// errors. The outcome still reports success = false.
EncodeOutcome encode_twostep(const PartitionedCode& code, const BitVec& message,
                             const ChannelState& state, Rng& rng);

// Exhaustive minimum-distance encoding over all 2^l masking vectors.
// Test oracle; requires l <= 20.
EncodeOutcome mde_exhaustive(const PartitionedCode& code, const BitVec& message,
                             const ChannelState& state);

// Maximum-likelihood erasure decoding by solving the unerased subsystem.
// Reports ambiguous when the message part of the solution is not unique.
DecodeOutcome decode_bdec_ml(const PartitionedCode& code, const ReceivedWord& received);

// Bounded-distance decoding of the [n, n-r] BCH layer via Berlekamp-Massey
// and Chien search, then message extraction through the inverse matrix.
DecodeOutcome decode_bdsc_bdd(const PartitionedCode& code, const BitVec& received);

}  // namespace plbc::codec
