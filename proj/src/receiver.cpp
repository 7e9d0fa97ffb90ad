#include "toklink/receiver.hpp"

namespace toklink {

const char* receive_status_name(ReceiveStatus status) {
    switch (status) {
        case ReceiveStatus::updated: return "updated";
        case ReceiveStatus::fallback: return "fallback";
        default: return "short_read_padded";
    }
}

ReceiveStatus receive_frame(ReceiverState& state, const std::vector<std::uint8_t>& payload,
                            int bits_per_token, bool block_ok) {
    if (!block_ok) {
        state.last_frame_ok = false;
        ++state.fallbacks;
        return ReceiveStatus::fallback;
    }
    const UnpackResult parsed = unpack(payload, bits_per_token);
    const bool malformed = parsed.k_limit > state.length();
    if (malformed || (!parsed.crc_ok && !parsed.short_read)) {
        state.last_frame_ok = false;
        ++state.fallbacks;
        return ReceiveStatus::fallback;
    }
    // Short reads are applied with zero-flag padding; clean packets verbatim.
    std::size_t next_value = 0;
    for (std::uint32_t i = 0; i < parsed.mask_bits.size(); ++i) {
        if (!parsed.mask_bits[i]) continue;
        state.tokens.codes[i] = next_value < parsed.values.size() ? parsed.values[next_value]
                                                                  : kZeroFlagToken;
        ++next_value;
    }
    state.last_frame_ok = true;
    ++state.frames_updated;
    if (parsed.short_read) {
        ++state.short_reads;
        return ReceiveStatus::short_read_padded;
    }
    return ReceiveStatus::updated;
}

Frame reconstruct(const ReceiverState& state, FrameGeometry geometry,
                  const TokenizerConfig& cfg) {
    return detokenize(state.tokens, geometry, cfg);
}

}  // namespace toklink
