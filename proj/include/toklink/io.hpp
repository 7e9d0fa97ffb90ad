#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "toklink/frame.hpp"

namespace toklink {

// Sidecar descriptor for raw GRAY8/RGB24 streams: flat key=value lines with
// keys width, height, channels, frames. '#' starts a comment line.
struct StreamDescriptor {
    FrameGeometry geometry;
    int frame_count = 0;
};

StreamDescriptor read_descriptor(const std::string& path);
void write_descriptor(const StreamDescriptor& desc, const std::string& path);

// Parses a flat key=value file (also used for simulator configs).
std::map<std::string, std::string> read_key_value_file(const std::string& path);

// Binary PGM (P5) / PPM (P6), maxval 255. A file may hold several
// concatenated frames; readers consume until EOF.
Frame read_pnm_frame(std::istream& in);
std::vector<Frame> read_pnm_stream(const std::string& path, int max_frames = 0);
void write_pnm_frame(const Frame& frame, std::ostream& out);
void write_pnm(const Frame& frame, const std::string& path);

std::vector<Frame> read_raw_stream(const std::string& path, const StreamDescriptor& desc,
                                   int max_frames = 0);
void write_raw_stream(const std::vector<Frame>& frames, const std::string& path);

// Dispatches on content: "P5"/"P6" magic selects PNM, anything else needs a
// descriptor (explicit path, or `<path>.desc` next to the input).
std::vector<Frame> load_frames(const std::string& path, const std::string& descriptor_path = "",
                               int max_frames = 0);

}  // namespace toklink
