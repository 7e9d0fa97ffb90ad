#pragma once

#include <cstdint>
#include <vector>

#include "toklink/tokenizer.hpp"

namespace toklink {

// Per-position change indicators against the previous key frame, with prefix
// sums so cost queries are O(1): prefix_counts[k] = ones among the first k.
struct ChangeMask {
    std::vector<std::uint8_t> bits;           // length L, values 0/1
    std::vector<std::uint32_t> prefix_counts; // length L+1, prefix_counts[0] = 0

    std::size_t size() const { return bits.size(); }
    std::uint32_t ones_up_to(std::size_t k) const { return prefix_counts[k]; }
};

ChangeMask change_mask(const TokenSequence& current, const TokenSequence& reference);

// Source bits for a top-K update: K header bits + b_val per changed value.
std::uint64_t frame_cost(std::size_t k, const ChangeMask& mask, int bits_per_token);

// Framing and overhead of the wire layout:
//   [K: 16 bits BE][header: K bits][body: b_val*C bits][CRC-16: 16 bits]
// zero-padded to a byte boundary. CRC-16/CCITT-FALSE over header||body bits.
inline constexpr std::uint64_t kFramingPrefixBits = 16;
inline constexpr std::uint64_t kCrcBits = 16;
inline constexpr std::uint64_t kPacketOverheadBits = kFramingPrefixBits + kCrcBits;
inline constexpr std::size_t kMaxPackedK = 0xFFFF;

struct FramePacket {
    std::uint32_t k_limit = 0;
    std::uint16_t crc = 0;
    std::size_t payload_bits = 0;            // exact length before byte padding
    std::vector<std::uint8_t> payload;       // byte-padded wire bytes
};

FramePacket pack(const TokenSequence& tokens, const ChangeMask& mask, std::size_t k,
                 int bits_per_token);

struct UnpackResult {
    std::uint32_t k_limit = 0;
    std::vector<std::uint8_t> mask_bits;     // parsed header, one entry per bit
    std::vector<std::uint32_t> values;       // may be shorter than ones count on short reads
    bool crc_ok = false;
    bool short_read = false;                 // payload ended before header/body/CRC implied
};

UnpackResult unpack(const std::vector<std::uint8_t>& payload, int bits_per_token);

}  // namespace toklink
