#include <doctest.h>

#include <random>

#include "toklink/rate_planner.hpp"

using namespace toklink;

namespace {

ChangeMask mask_of(const std::vector<std::uint8_t>& bits) {
    ChangeMask mask;
    mask.bits = bits;
    mask.prefix_counts.resize(bits.size() + 1);
    mask.prefix_counts[0] = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        mask.prefix_counts[i + 1] = mask.prefix_counts[i] + (bits[i] ? 1 : 0);
    return mask;
}

// Exhaustive reference for the binary search.
std::optional<std::uint64_t> scan_feasible_k(const ChangeMask& mask, int b_val,
                                             std::uint64_t budget, std::uint64_t overhead) {
    if (overhead > budget) return std::nullopt;
    std::optional<std::uint64_t> best;
    for (std::size_t k = 0; k <= mask.size(); ++k)
        if (frame_cost(k, mask, b_val) + overhead <= budget) best = k;
    return best;
}

}  // namespace

TEST_CASE("symbol allocation is the uniform floor split") {
    CHECK(allocate_symbols(1.0, 100, 10, 10).symbols_per_key_frame == 100);
    // 256x256x3 at R = 4e-4 over 300 frames and 75 key frames
    CHECK(allocate_symbols(4e-4, 196608, 300, 75).symbols_per_key_frame == 314);
    CHECK_THROWS(allocate_symbols(1.0, 100, 10, 0));
}

TEST_CASE("allocation keeps the realized ratio at or below the target") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t m = 1 + rng() % 100000;
        const std::uint64_t total = 1 + rng() % 500;
        const std::uint64_t keys = 1 + rng() % total;
        const double target = static_cast<double>(rng() % 1000) / 1e6;
        const std::uint64_t per_key =
            allocate_symbols(target, m, total, keys).symbols_per_key_frame;
        const double realized = static_cast<double>(per_key * keys) /
                                (static_cast<double>(m) * static_cast<double>(total));
        CHECK(realized <= target + 1e-12);
    }
}

TEST_CASE("deliverable bits floors rate * symbols * bits-per-symbol") {
    CHECK(deliverable_bits({8.0, 0.540, ModulationScheme::qam16}, 1000) == 2160);
    CHECK(deliverable_bits({-2.0, 0.245, ModulationScheme::qpsk}, 0) == 0);
    CHECK(deliverable_bits({0.0, 0.301, ModulationScheme::qpsk}, 314) == 189);
}

TEST_CASE("max feasible K on the worked mask") {
    // costs per K: 13, 26, 27, 40 -> budget 27 admits K = 3
    const ChangeMask mask = mask_of({1, 1, 0, 1});
    CHECK(max_feasible_k(mask, 12, 27, 0) == 3);
    CHECK(max_feasible_k(mask, 12, 26, 0) == 2);
    CHECK(max_feasible_k(mask, 12, 12, 0) == 0);    // even K=1 fails
    CHECK(max_feasible_k(mask, 12, 1000, 0) == 4);  // saturates at L
}

TEST_CASE("overhead beyond the budget is infeasible, not K=0") {
    const ChangeMask mask = mask_of({1, 0});
    CHECK(max_feasible_k(mask, 12, 31, 32) == std::nullopt);
    CHECK(max_feasible_k(mask, 12, 32, 32) == 0);
}

TEST_CASE("binary search equals the exhaustive scan") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<std::uint8_t> bits(1 + rng() % 300);
        for (auto& bit : bits) bit = rng() % 100 < 30 ? 1 : 0;
        const ChangeMask mask = mask_of(bits);
        const std::uint64_t budget = rng() % (13 * bits.size() + 64);
        const std::uint64_t overhead = rng() % 48;
        const auto fast = max_feasible_k(mask, 12, budget, overhead);
        const auto slow = scan_feasible_k(mask, 12, budget, overhead);
        CHECK(fast == slow);
        if (fast) {
            CHECK(frame_cost(*fast, mask, 12) + overhead <= budget);
            if (*fast < mask.size())
                CHECK(frame_cost(*fast + 1, mask, 12) + overhead > budget);
        }
    }
}

TEST_CASE("gop planning takes the minimum feasible K") {
    const std::vector<std::uint64_t> uniform = {7, 7, 7};
    CHECK(plan_gop(uniform) == 7);
    const std::vector<std::uint64_t> mixed = {12, 3, 9};
    CHECK(plan_gop(mixed) == 3);
    CHECK_THROWS(plan_gop(std::span<const std::uint64_t>{}));
}

TEST_CASE("the stabilized K stays feasible for every member frame") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t budget = 64 + rng() % 4096;
        std::vector<ChangeMask> masks;
        std::vector<std::uint64_t> per_frame;
        for (int f = 0; f < 8; ++f) {
            std::vector<std::uint8_t> bits(256);
            for (auto& bit : bits) bit = rng() & 1;
            masks.push_back(mask_of(bits));
            const auto k = max_feasible_k(masks.back(), 12, budget, 32);
            REQUIRE(k.has_value());
            per_frame.push_back(*k);
        }
        const std::uint64_t stabilized = plan_gop(per_frame);
        for (const ChangeMask& mask : masks)
            CHECK(frame_cost(stabilized, mask, 12) + 32 <= budget);
    }
}
