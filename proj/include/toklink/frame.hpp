#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace toklink {

struct FrameGeometry {
    int width = 0;
    int height = 0;
    int channels = 1;  // 1 (gray) or 3 (rgb)

    std::size_t sample_count() const {
        return static_cast<std::size_t>(width) * height * channels;
    }
    bool operator==(const FrameGeometry&) const = default;
};

// One video frame: 8-bit samples, row-major, channel-interleaved.
struct Frame {
    FrameGeometry geometry;
    std::vector<std::uint8_t> samples;

    int width() const { return geometry.width; }
    int height() const { return geometry.height; }
    int channels() const { return geometry.channels; }

    bool operator==(const Frame&) const = default;
};

Frame make_frame(FrameGeometry geometry, std::uint8_t fill = 0);

}  // namespace toklink
