#include "toklink/diff_coder.hpp"

#include <stdexcept>

#include "toklink/bits.hpp"

namespace toklink {

ChangeMask change_mask(const TokenSequence& current, const TokenSequence& reference) {
    if (current.size() != reference.size())
        throw std::invalid_argument("change_mask: sequence lengths differ");
    ChangeMask mask;
    const std::size_t length = current.size();
    mask.bits.resize(length);
    mask.prefix_counts.resize(length + 1);
    mask.prefix_counts[0] = 0;
    for (std::size_t i = 0; i < length; ++i) {
        mask.bits[i] = current.codes[i] != reference.codes[i] ? 1 : 0;
        mask.prefix_counts[i + 1] = mask.prefix_counts[i] + mask.bits[i];
    }
    return mask;
}

std::uint64_t frame_cost(std::size_t k, const ChangeMask& mask, int bits_per_token) {
    if (k > mask.size()) throw std::invalid_argument("frame_cost: K exceeds mask length");
    return static_cast<std::uint64_t>(k) +
           static_cast<std::uint64_t>(bits_per_token) * mask.ones_up_to(k);
}

FramePacket pack(const TokenSequence& tokens, const ChangeMask& mask, std::size_t k,
                 int bits_per_token) {
    if (k > mask.size() || mask.size() != tokens.size())
        throw std::invalid_argument("pack: K exceeds sequence length");
    if (k > kMaxPackedK)
        throw std::invalid_argument("pack: K exceeds 16-bit framing prefix range");

    BitWriter writer;
    Crc16 crc;
    writer.put_bits(k, 16);
    for (std::size_t i = 0; i < k; ++i) {
        writer.put_bit(mask.bits[i]);
        crc.feed_bit(mask.bits[i]);
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!mask.bits[i]) continue;
        writer.put_bits(tokens.codes[i], bits_per_token);
        crc.feed_bits(tokens.codes[i], bits_per_token);
    }
    FramePacket packet;
    packet.k_limit = static_cast<std::uint32_t>(k);
    packet.crc = crc.value();
    writer.put_bits(packet.crc, 16);
    packet.payload_bits = writer.bit_count();
    packet.payload = writer.take_bytes();
    return packet;
}

UnpackResult unpack(const std::vector<std::uint8_t>& payload, int bits_per_token) {
    UnpackResult result;
    BitReader reader(payload);
    if (reader.remaining() < kFramingPrefixBits) {
        result.short_read = true;
        return result;
    }
    result.k_limit = static_cast<std::uint32_t>(reader.read_bits(16));

    Crc16 crc;
    result.mask_bits.reserve(result.k_limit);
    for (std::uint32_t i = 0; i < result.k_limit; ++i) {
        if (reader.remaining() < 1) {
            result.short_read = true;
            return result;
        }
        const bool bit = reader.read_bit();
        result.mask_bits.push_back(bit ? 1 : 0);
        crc.feed_bit(bit);
    }
    std::uint32_t ones = 0;
    for (std::uint8_t bit : result.mask_bits) ones += bit;
    result.values.reserve(ones);
    for (std::uint32_t i = 0; i < ones; ++i) {
        if (reader.remaining() < static_cast<std::size_t>(bits_per_token)) {
            result.short_read = true;
            return result;
        }
        const std::uint32_t value =
            static_cast<std::uint32_t>(reader.read_bits(bits_per_token));
        result.values.push_back(value);
        crc.feed_bits(value, bits_per_token);
    }
    if (reader.remaining() < kCrcBits) {
        result.short_read = true;
        return result;
    }
    const std::uint16_t stored = static_cast<std::uint16_t>(reader.read_bits(16));
    result.crc_ok = stored == crc.value();
    // Only byte padding may remain, and it must be zero; anything else means
    // the header popcount did not match the true body length.
    if (reader.remaining() >= 8) result.crc_ok = false;
    while (reader.remaining() > 0)
        if (reader.read_bit()) result.crc_ok = false;
    return result;
}

}  // namespace toklink
