#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "toklink/diff_coder.hpp"
#include "toklink/phy.hpp"

namespace toklink {

struct SymbolBudget {
    std::uint64_t symbols_per_key_frame = 0;  // channel uses granted to each key frame
};

// Uniform split of the global symbol budget R*m*T across key frames; the
// floor keeps the realized bandwidth ratio at or below the target.
SymbolBudget allocate_symbols(double cbr_target, std::uint64_t pixels_per_frame,
                              std::uint64_t total_frames, std::uint64_t key_count);

// floor(rate * symbols * bits_per_symbol), evaluated in integer arithmetic
// (code rate in parts-per-million) so table rates floor exactly.
std::uint64_t deliverable_bits(const McsEntry& mcs, std::uint64_t symbols);

// Largest K with frame_cost(K) + overhead <= budget; binary search over the
// monotone cost. nullopt when the overhead alone does not fit.
std::optional<std::uint64_t> max_feasible_k(const ChangeMask& mask, int bits_per_token,
                                            std::uint64_t budget_bits,
                                            std::uint64_t overhead_bits);

// Stabilized GOP prefix: the minimum per-frame K*, feasible for every member.
std::uint64_t plan_gop(std::span<const std::uint64_t> per_frame_k);

}  // namespace toklink
