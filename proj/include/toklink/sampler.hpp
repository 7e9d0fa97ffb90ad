#pragma once

#include <vector>

#include "toklink/frame.hpp"

namespace toklink {

enum class BoundaryMode { copy_nearest, hold_last };

// Key-frame selection: K = {1, 1+S, 1+2S, ...} over 1-based frame indices.
struct SamplingPlan {
    int stride = 1;           // S
    int total_frames = 0;     // T
    int gop_size = 32;        // N
    std::vector<int> key_frames;  // ascending, 1-based

    bool is_key(int t) const;
    int gop_index(int t) const { return (t - 1) / gop_size; }
};

SamplingPlan key_indices(int total_frames, int stride, int gop_size = 32);

// Anchors for a non-key frame: prev_key = max{k in K : k <= t},
// next_key = min{k in K : k >= t} (0 when past the last key frame).
struct Neighbors {
    int prev_key = 0;
    int next_key = 0;      // 0 = no key frame at or after t
    double alpha = 0.0;    // (t - prev) / (next - prev); meaningless for keys
    bool is_key = false;
};

Neighbors neighbors(int t, const SamplingPlan& plan);

// Reference interpolator: per-pixel blend (1-alpha)*a + alpha*b, rounded
// half-up and clamped. Stands in for a learned interpolator behind the same
// three-argument interface.
Frame interpolate(const Frame& frame_a, const Frame& frame_b, double alpha);

}  // namespace toklink
