#include <doctest.h>

#include <random>

#include "toklink/bits.hpp"

using namespace toklink;

TEST_CASE("bit writer packs MSB-first") {
    BitWriter writer;
    writer.put_bit(true);
    writer.put_bit(false);
    writer.put_bit(true);
    CHECK(writer.bit_count() == 3);
    CHECK(writer.bytes() == std::vector<std::uint8_t>{0xA0});

    writer.put_bits(0x5, 3);  // 101 -> byte now 10110100 with 2 pad bits
    CHECK(writer.bytes() == std::vector<std::uint8_t>{0xB4});
}

TEST_CASE("fixed-width fields are big-endian") {
    BitWriter writer;
    writer.put_bits(0x1234, 16);
    CHECK(writer.bytes() == std::vector<std::uint8_t>{0x12, 0x34});

    BitReader reader(writer.bytes());
    CHECK(reader.read_bits(16) == 0x1234);
    CHECK(reader.remaining() == 0);
}

TEST_CASE("writer/reader round-trip random fields") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        BitWriter writer;
        std::vector<std::pair<std::uint64_t, int>> fields;
        for (int i = 0; i < 20; ++i) {
            const int width = 1 + static_cast<int>(rng() % 24);
            const std::uint64_t value = rng() & ((1ull << width) - 1);
            fields.emplace_back(value, width);
            writer.put_bits(value, width);
        }
        BitReader reader(writer.bytes().data(), writer.bit_count());
        for (const auto& [value, width] : fields) CHECK(reader.read_bits(width) == value);
    }
}

TEST_CASE("crc16 ccitt-false check vector") {
    const char* msg = "123456789";
    CHECK(crc16_bytes(reinterpret_cast<const std::uint8_t*>(msg), 9) == 0x29B1);
}

TEST_CASE("crc16 empty message is the init value") {
    Crc16 crc;
    CHECK(crc.value() == 0xFFFF);
}

TEST_CASE("crc16 detects any single-bit flip") {
    std::mt19937_64 rng(11);
    std::vector<std::uint8_t> msg(16);
    for (auto& byte : msg) byte = static_cast<std::uint8_t>(rng());
    const std::uint16_t reference = crc16_bytes(msg.data(), msg.size());
    for (std::size_t bit = 0; bit < msg.size() * 8; ++bit) {
        std::vector<std::uint8_t> corrupted = msg;
        corrupted[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
        CHECK(crc16_bytes(corrupted.data(), corrupted.size()) != reference);
    }
}

TEST_CASE("bitwise and bytewise crc agree") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> msg(1 + rng() % 64);
        for (auto& byte : msg) byte = static_cast<std::uint8_t>(rng());
        Crc16 crc;
        for (std::uint8_t byte : msg)
            for (int i = 7; i >= 0; --i) crc.feed_bit((byte >> i) & 1);
        CHECK(crc.value() == crc16_bytes(msg.data(), msg.size()));
    }
}
