#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_frames.hpp"
#include "toklink/io.hpp"

using namespace toklink;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("pgm frame round-trip") {
    const Frame frame = testing::random_frame({16, 8, 1}, 3);
    std::stringstream buffer;
    write_pnm_frame(frame, buffer);
    CHECK(read_pnm_frame(buffer) == frame);
}

TEST_CASE("ppm stream holds several frames") {
    const auto path = temp_path("toklink_test_stream.ppm");
    const std::vector<Frame> frames = {testing::random_frame({8, 8, 3}, 1),
                                       testing::random_frame({8, 8, 3}, 2),
                                       testing::random_frame({8, 8, 3}, 3)};
    {
        std::ofstream out(path, std::ios::binary);
        for (const Frame& frame : frames) write_pnm_frame(frame, out);
    }
    CHECK(read_pnm_stream(path.string()) == frames);
    CHECK(read_pnm_stream(path.string(), 2).size() == 2);
    std::filesystem::remove(path);
}

TEST_CASE("pnm header comments are skipped") {
    std::stringstream buffer;
    buffer << "P5\n# a comment\n4 4\n255\n";
    for (int i = 0; i < 16; ++i) buffer.put(static_cast<char>(i));
    const Frame frame = read_pnm_frame(buffer);
    CHECK(frame.width() == 4);
    CHECK(frame.samples[5] == 5);
}

TEST_CASE("raw stream with sidecar descriptor") {
    const auto raw_path = temp_path("toklink_test_stream.raw");
    const auto desc_path = temp_path("toklink_test_stream.raw.desc");
    const std::vector<Frame> frames = {testing::natural_frame({16, 16, 3}, 0.0),
                                       testing::natural_frame({16, 16, 3}, 0.5)};
    write_raw_stream(frames, raw_path.string());
    write_descriptor({{16, 16, 3}, 2}, desc_path.string());

    CHECK(load_frames(raw_path.string()) == frames);  // picks up <path>.desc
    CHECK(load_frames(raw_path.string(), desc_path.string(), 1).size() == 1);

    const StreamDescriptor desc = read_descriptor(desc_path.string());
    CHECK(desc.geometry == FrameGeometry{16, 16, 3});
    CHECK(desc.frame_count == 2);
    std::filesystem::remove(raw_path);
    std::filesystem::remove(desc_path);
}

TEST_CASE("raw stream shorter than descriptor errors") {
    const auto raw_path = temp_path("toklink_test_short.raw");
    write_raw_stream({testing::random_frame({8, 8, 1}, 9)}, raw_path.string());
    CHECK_THROWS(read_raw_stream(raw_path.string(), {{8, 8, 1}, 2}));
    std::filesystem::remove(raw_path);
}

TEST_CASE("key=value files tolerate blanks and comments") {
    const auto path = temp_path("toklink_test_kv.txt");
    {
        std::ofstream out(path);
        out << "# comment\n\n width = 32 \nmode=per-frame\n";
    }
    const auto kv = read_key_value_file(path.string());
    CHECK(kv.at("width") == "32");
    CHECK(kv.at("mode") == "per-frame");
    std::filesystem::remove(path);
}
