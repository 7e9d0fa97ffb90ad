#pragma once

// Deterministic synthetic frames for tests: seeded noise, smooth gradients
// with drifting blobs, and a moving-scene generator for video runs.

#include <cmath>
#include <random>

#include "toklink/frame.hpp"

namespace toklink::testing {

inline Frame random_frame(FrameGeometry geometry, std::uint64_t seed) {
    Frame frame = make_frame(geometry);
    std::mt19937_64 rng(seed);
    for (auto& sample : frame.samples) sample = static_cast<std::uint8_t>(rng() & 0xFF);
    return frame;
}

// Smooth "natural" content: diagonal gradient, two Gaussian blobs, and a low
// frequency sinusoidal texture. `phase` drifts the features over time.
inline Frame natural_frame(FrameGeometry geometry, double phase) {
    Frame frame = make_frame(geometry);
    const int w = geometry.width, h = geometry.height, c = geometry.channels;
    const double cx1 = w * (0.35 + 0.15 * std::sin(phase));
    const double cy1 = h * (0.40 + 0.20 * std::cos(phase * 0.7));
    const double cx2 = w * (0.70 + 0.10 * std::cos(phase * 1.3));
    const double cy2 = h * (0.65 + 0.15 * std::sin(phase * 0.9));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gradient = 40.0 + 120.0 * (x + y) / static_cast<double>(w + h);
            const double d1 = ((x - cx1) * (x - cx1) + (y - cy1) * (y - cy1)) / (0.02 * w * h);
            const double d2 = ((x - cx2) * (x - cx2) + (y - cy2) * (y - cy2)) / (0.01 * w * h);
            const double blobs = 90.0 * std::exp(-d1) + 60.0 * std::exp(-d2);
            const double texture =
                14.0 * std::sin(0.11 * x + phase) * std::cos(0.07 * y - 0.5 * phase);
            for (int ch = 0; ch < c; ++ch) {
                const double shade = gradient + blobs + texture + 12.0 * ch;
                const double clamped = shade < 0.0 ? 0.0 : shade > 255.0 ? 255.0 : shade;
                frame.samples[(static_cast<std::size_t>(y) * w + x) * c + ch] =
                    static_cast<std::uint8_t>(std::lround(clamped));
            }
        }
    }
    return frame;
}

inline std::vector<Frame> moving_scene(FrameGeometry geometry, int frame_count,
                                       double speed = 0.15) {
    std::vector<Frame> frames;
    frames.reserve(frame_count);
    for (int t = 0; t < frame_count; ++t)
        frames.push_back(natural_frame(geometry, speed * t));
    return frames;
}

}  // namespace toklink::testing
