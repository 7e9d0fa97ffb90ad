#include "toklink/rate_planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace toklink {

SymbolBudget allocate_symbols(double cbr_target, std::uint64_t pixels_per_frame,
                              std::uint64_t total_frames, std::uint64_t key_count) {
    if (key_count == 0) throw std::invalid_argument("allocate_symbols: zero key frames");
    if (cbr_target < 0.0) throw std::invalid_argument("allocate_symbols: negative CBR");
    const double total_symbols =
        cbr_target * static_cast<double>(pixels_per_frame) * static_cast<double>(total_frames);
    return {static_cast<std::uint64_t>(std::floor(total_symbols / key_count))};
}

std::uint64_t deliverable_bits(const McsEntry& mcs, std::uint64_t symbols) {
    const std::uint64_t rate_ppm = static_cast<std::uint64_t>(std::llround(mcs.code_rate * 1e6));
    return rate_ppm * symbols * mcs.bits_per_symbol() / 1000000u;
}

std::optional<std::uint64_t> max_feasible_k(const ChangeMask& mask, int bits_per_token,
                                            std::uint64_t budget_bits,
                                            std::uint64_t overhead_bits) {
    if (overhead_bits > budget_bits) return std::nullopt;
    const std::uint64_t source_budget = budget_bits - overhead_bits;
    std::uint64_t lo = 0, hi = mask.size();  // invariant: cost(lo) <= source_budget
    if (frame_cost(hi, mask, bits_per_token) <= source_budget) return hi;
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (frame_cost(mid, mask, bits_per_token) <= source_budget)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t plan_gop(std::span<const std::uint64_t> per_frame_k) {
    if (per_frame_k.empty()) throw std::invalid_argument("plan_gop: empty GOP");
    return *std::min_element(per_frame_k.begin(), per_frame_k.end());
}

}  // namespace toklink
