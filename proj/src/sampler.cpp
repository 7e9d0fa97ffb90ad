#include "toklink/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace toklink {

bool SamplingPlan::is_key(int t) const {
    return t >= 1 && t <= total_frames && (t - 1) % stride == 0;
}

SamplingPlan key_indices(int total_frames, int stride, int gop_size) {
    if (total_frames < 1) throw std::invalid_argument("key_indices: need T >= 1");
    if (stride < 1) throw std::invalid_argument("key_indices: need S >= 1");
    if (gop_size < 1) throw std::invalid_argument("key_indices: need N >= 1");
    SamplingPlan plan;
    plan.stride = stride;
    plan.total_frames = total_frames;
    plan.gop_size = gop_size;
    for (int t = 1; t <= total_frames; t += stride) plan.key_frames.push_back(t);
    return plan;
}

Neighbors neighbors(int t, const SamplingPlan& plan) {
    if (t < 1 || t > plan.total_frames) throw std::invalid_argument("neighbors: t out of range");
    Neighbors nb;
    if (plan.is_key(t)) {
        nb.prev_key = nb.next_key = t;
        nb.is_key = true;
        return nb;
    }
    nb.prev_key = t - (t - 1) % plan.stride;
    const int next = nb.prev_key + plan.stride;
    if (next <= plan.total_frames) {
        nb.next_key = next;
        nb.alpha = static_cast<double>(t - nb.prev_key) / (nb.next_key - nb.prev_key);
    }
    return nb;
}

Frame interpolate(const Frame& frame_a, const Frame& frame_b, double alpha) {
    if (frame_a.geometry != frame_b.geometry)
        throw std::invalid_argument("interpolate: geometry mismatch");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("interpolate: alpha must be in [0,1]");
    Frame out = make_frame(frame_a.geometry);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        const double blend =
            (1.0 - alpha) * frame_a.samples[i] + alpha * frame_b.samples[i];
        const double rounded = std::floor(blend + 0.5);
        out.samples[i] = static_cast<std::uint8_t>(rounded < 0.0 ? 0
                                                   : rounded > 255.0 ? 255
                                                                     : rounded);
    }
    return out;
}

}  // namespace toklink
