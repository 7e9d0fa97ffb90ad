#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace toklink {

// MSB-first bit packing. Bit 0 of a stream is the most significant bit of
// byte 0; fixed-width fields are written big-endian.
class BitWriter {
public:
    void put_bit(bool bit);
    void put_bits(std::uint64_t value, int width);  // value's low `width` bits, MSB first

    std::size_t bit_count() const { return bit_count_; }
    // Byte vector zero-padded to a byte boundary.
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::vector<std::uint8_t> take_bytes() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bit_count_ = 0;
};

class BitReader {
public:
    BitReader(const std::uint8_t* data, std::size_t bit_count)
        : data_(data), bit_count_(bit_count) {}
    explicit BitReader(const std::vector<std::uint8_t>& bytes)
        : data_(bytes.data()), bit_count_(bytes.size() * 8) {}

    std::size_t remaining() const { return bit_count_ - cursor_; }
    bool read_bit();                          // precondition: remaining() >= 1
    std::uint64_t read_bits(int width);       // precondition: remaining() >= width

private:
    const std::uint8_t* data_;
    std::size_t bit_count_;
    std::size_t cursor_ = 0;
};

// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF, no reflection, no xorout),
// processed bit-by-bit so non-byte-aligned messages are well defined.
class Crc16 {
public:
    void feed_bit(bool bit);
    void feed_bits(std::uint64_t value, int width);
    std::uint16_t value() const { return crc_; }

private:
    std::uint16_t crc_ = 0xFFFF;
};

std::uint16_t crc16_bytes(const std::uint8_t* data, std::size_t size);

}  // namespace toklink
