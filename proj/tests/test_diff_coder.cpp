#include <doctest.h>

#include <random>

#include "test_frames.hpp"
#include "toklink/diff_coder.hpp"

using namespace toklink;

namespace {

TokenSequence seq(std::initializer_list<std::uint32_t> codes) {
    TokenSequence s;
    s.codes = codes;
    return s;
}

// Naive oracle: collect bits into a bool vector, then pack bytes by hand.
std::vector<std::uint8_t> naive_payload(const TokenSequence& tokens,
                                        const std::vector<std::uint8_t>& mask_bits,
                                        std::size_t k, int b_val) {
    std::vector<bool> bits;
    auto push = [&](std::uint64_t value, int width) {
        for (int i = width - 1; i >= 0; --i) bits.push_back((value >> i) & 1);
    };
    push(k, 16);
    std::vector<bool> protected_bits;
    for (std::size_t i = 0; i < k; ++i) {
        bits.push_back(mask_bits[i]);
        protected_bits.push_back(mask_bits[i]);
    }
    for (std::size_t i = 0; i < k; ++i)
        if (mask_bits[i])
            for (int j = b_val - 1; j >= 0; --j) {
                bits.push_back((tokens.codes[i] >> j) & 1);
                protected_bits.push_back((tokens.codes[i] >> j) & 1);
            }
    std::uint16_t crc = 0xFFFF;
    for (bool bit : protected_bits) {
        const bool msb = crc & 0x8000;
        crc = static_cast<std::uint16_t>(crc << 1);
        if (msb != bit) crc ^= 0x1021;
    }
    push(crc, 16);
    while (bits.size() % 8 != 0) bits.push_back(false);
    std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return bytes;
}

ChangeMask mask_of(const std::vector<std::uint8_t>& bits) {
    ChangeMask mask;
    mask.bits = bits;
    mask.prefix_counts.resize(bits.size() + 1);
    mask.prefix_counts[0] = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        mask.prefix_counts[i + 1] = mask.prefix_counts[i] + (bits[i] ? 1 : 0);
    return mask;
}

}  // namespace

TEST_CASE("change mask marks differing positions with prefix sums") {
    const ChangeMask mask = change_mask(seq({5, 8, 9}), seq({5, 7, 9}));
    CHECK(mask.bits == std::vector<std::uint8_t>{0, 1, 0});
    CHECK(mask.prefix_counts == std::vector<std::uint32_t>{0, 0, 1, 1});
}

TEST_CASE("identical sequences give an all-zero mask") {
    const ChangeMask mask = change_mask(seq({1, 2, 3}), seq({1, 2, 3}));
    for (std::uint8_t bit : mask.bits) CHECK(bit == 0);
    CHECK(mask.ones_up_to(3) == 0);
}

TEST_CASE("zero-state reference realizes the first-frame all-ones convention") {
    TokenizerConfig cfg;
    const TokenSequence tokens = tokenize(testing::random_frame({16, 16, 1}, 4), cfg);
    const ChangeMask mask = change_mask(tokens, zero_state(tokens.size()));
    for (std::uint8_t bit : mask.bits) CHECK(bit == 1);
    // so the bootstrap cost is exactly (1 + b_val) * K
    for (std::size_t k : {std::size_t{0}, std::size_t{5}, tokens.size()})
        CHECK(frame_cost(k, mask, 12) == 13 * k);
}

TEST_CASE("change mask requires equal lengths") {
    CHECK_THROWS(change_mask(seq({1, 2}), seq({1, 2, 3})));
}

TEST_CASE("frame cost evaluates K + b_val * C(K)") {
    const ChangeMask mask = mask_of({1, 0, 1, 1});
    CHECK(frame_cost(0, mask, 12) == 0);
    CHECK(frame_cost(4, mask, 12) == 4 + 12 * 3);
    CHECK_THROWS(frame_cost(5, mask, 12));
}

TEST_CASE("cost increments are 1 or 1 + b_val") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> bits(1 + rng() % 200);
        for (auto& bit : bits) bit = rng() & 1;
        const ChangeMask mask = mask_of(bits);
        for (std::size_t k = 0; k < bits.size(); ++k) {
            const std::uint64_t step = frame_cost(k + 1, mask, 12) - frame_cost(k, mask, 12);
            CHECK((step == 1 || step == 13));
        }
    }
}

TEST_CASE("pack layout matches the worked example") {
    // tokens (5,7,9), mask (0,1,0), K=2: header "01", body = 000000000111
    const FramePacket packet = pack(seq({5, 7, 9}), mask_of({0, 1, 0}), 2, 12);
    CHECK(packet.k_limit == 2);
    CHECK(packet.payload_bits == 16 + 2 + 12 + 16);
    CHECK(packet.payload == naive_payload(seq({5, 7, 9}), {0, 1, 0}, 2, 12));
    // framing prefix carries K big-endian
    CHECK(packet.payload[0] == 0x00);
    CHECK(packet.payload[1] == 0x02);
    // header bits 01 then the 12-bit code 7: 01 0000 0000 0111 ...
    CHECK((packet.payload[2] >> 6) == 0b01);
}

TEST_CASE("K=0 packet is framing plus CRC only") {
    const FramePacket packet = pack(seq({}), mask_of({}), 0, 12);
    CHECK(packet.payload_bits == 32);
    CHECK(packet.payload.size() == 4);
    CHECK(packet.crc == 0xFFFF);  // CRC of the empty message is the init value

    const UnpackResult parsed = unpack(packet.payload, 12);
    CHECK(parsed.k_limit == 0);
    CHECK(parsed.crc_ok);
    CHECK(parsed.values.empty());
}

TEST_CASE("pack rejects K beyond the sequence or the framing prefix") {
    CHECK_THROWS(pack(seq({1, 2}), mask_of({1, 0}), 3, 12));
    TokenSequence big = zero_state(70000);
    ChangeMask mask = mask_of(std::vector<std::uint8_t>(70000, 0));
    CHECK_THROWS(pack(big, mask, 66000, 12));
}

TEST_CASE("unpack inverts the worked example") {
    const FramePacket packet = pack(seq({5, 7, 9}), mask_of({0, 1, 0}), 2, 12);
    const UnpackResult parsed = unpack(packet.payload, 12);
    CHECK(parsed.k_limit == 2);
    CHECK(parsed.mask_bits == std::vector<std::uint8_t>{0, 1});
    CHECK(parsed.values == std::vector<std::uint32_t>{7});
    CHECK(parsed.crc_ok);
    CHECK_FALSE(parsed.short_read);
}

TEST_CASE("a flipped body bit fails the CRC") {
    const FramePacket packet = pack(seq({5, 7, 9}), mask_of({0, 1, 0}), 2, 12);
    std::vector<std::uint8_t> corrupted = packet.payload;
    corrupted[3] ^= 0x10;  // inside the 12-bit value
    CHECK_FALSE(unpack(corrupted, 12).crc_ok);
}

TEST_CASE("truncation mid-body reports a short read with the recovered values") {
    const FramePacket packet =
        pack(seq({100, 200, 300, 400}), mask_of({1, 1, 1, 1}), 4, 12);
    std::vector<std::uint8_t> truncated(packet.payload.begin(), packet.payload.begin() + 5);
    const UnpackResult parsed = unpack(truncated, 12);
    CHECK(parsed.short_read);
    CHECK_FALSE(parsed.crc_ok);
    CHECK(parsed.k_limit == 4);
    CHECK(parsed.values.size() < 4);
    for (std::size_t i = 0; i < parsed.values.size(); ++i)
        CHECK(parsed.values[i] == 100 * (i + 1));
}

TEST_CASE("unpack survives an empty or tiny payload") {
    CHECK(unpack({}, 12).short_read);
    CHECK(unpack({0x00}, 12).short_read);
}

TEST_CASE("round-trip against the naive bit-writer oracle") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        const int b_val = trial % 2 == 0 ? 12 : 8;
        const std::size_t length = 1 + rng() % 120;
        TokenSequence tokens;
        std::vector<std::uint8_t> bits(length);
        for (std::size_t i = 0; i < length; ++i) {
            tokens.codes.push_back(rng() & ((1u << b_val) - 1));
            bits[i] = rng() & 1;
        }
        const ChangeMask mask = mask_of(bits);
        const std::size_t k = rng() % (length + 1);

        const FramePacket packet = pack(tokens, mask, k, b_val);
        CHECK(packet.payload == naive_payload(tokens, bits, k, b_val));
        CHECK(packet.payload_bits == 32 + frame_cost(k, mask, b_val));

        const UnpackResult parsed = unpack(packet.payload, b_val);
        REQUIRE(parsed.crc_ok);
        REQUIRE_FALSE(parsed.short_read);
        CHECK(parsed.k_limit == k);
        CHECK(parsed.mask_bits ==
              std::vector<std::uint8_t>(bits.begin(), bits.begin() + k));
        std::vector<std::uint32_t> expected;
        for (std::size_t i = 0; i < k; ++i)
            if (bits[i]) expected.push_back(tokens.codes[i]);
        CHECK(parsed.values == expected);
    }
}
