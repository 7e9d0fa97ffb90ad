#pragma once

#include <cstdint>
#include <vector>

#include "toklink/diff_coder.hpp"
#include "toklink/tokenizer.hpp"

namespace toklink {

enum class ReceiveStatus { updated, fallback, short_read_padded };

const char* receive_status_name(ReceiveStatus status);

// Running token state for one stream. Length is fixed at construction and
// never changes; the state starts (and restarts at GOP boundaries) as the
// all-zero-flag sequence.
struct ReceiverState {
    TokenSequence tokens;
    bool last_frame_ok = true;
    std::uint64_t frames_updated = 0;
    std::uint64_t fallbacks = 0;
    std::uint64_t short_reads = 0;

    explicit ReceiverState(std::size_t length) : tokens(zero_state(length)) {}
    std::size_t length() const { return tokens.size(); }
    void reset() { tokens = zero_state(tokens.size()); }
};

// Applies one parsed packet to the running state:
//   - CRC failure (or a malformed K > L) keeps the state unchanged,
//   - header bit 1 overwrites position i with the next body value,
//   - header bit 0 and positions beyond K keep the previous value,
//   - values missing on a short read become the zero flag.
// With block_ok=false (FEC reported an uncorrectable frame) the payload is
// not inspected at all.
ReceiveStatus receive_frame(ReceiverState& state, const std::vector<std::uint8_t>& payload,
                            int bits_per_token, bool block_ok = true);

Frame reconstruct(const ReceiverState& state, FrameGeometry geometry,
                  const TokenizerConfig& cfg);

}  // namespace toklink
