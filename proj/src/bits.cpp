#include "toklink/bits.hpp"

namespace toklink {

void BitWriter::put_bit(bool bit) {
    const std::size_t byte_idx = bit_count_ / 8;
    if (byte_idx == bytes_.size()) bytes_.push_back(0);
    if (bit) bytes_[byte_idx] |= static_cast<std::uint8_t>(0x80u >> (bit_count_ % 8));
    ++bit_count_;
}

void BitWriter::put_bits(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) put_bit((value >> i) & 1u);
}

bool BitReader::read_bit() {
    const bool bit = (data_[cursor_ / 8] >> (7 - cursor_ % 8)) & 1u;
    ++cursor_;
    return bit;
}

std::uint64_t BitReader::read_bits(int width) {
    std::uint64_t value = 0;
    for (int i = 0; i < width; ++i) value = (value << 1) | (read_bit() ? 1u : 0u);
    return value;
}

void Crc16::feed_bit(bool bit) {
    const bool msb = (crc_ & 0x8000u) != 0;
    crc_ = static_cast<std::uint16_t>(crc_ << 1);
    if (msb != bit) crc_ ^= 0x1021;
}

void Crc16::feed_bits(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) feed_bit((value >> i) & 1u);
}

std::uint16_t crc16_bytes(const std::uint8_t* data, std::size_t size) {
    Crc16 crc;
    for (std::size_t i = 0; i < size; ++i) crc.feed_bits(data[i], 8);
    return crc.value();
}

}  // namespace toklink
