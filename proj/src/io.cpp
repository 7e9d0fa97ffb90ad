#include "toklink/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace toklink {

Frame make_frame(FrameGeometry geometry, std::uint8_t fill) {
    Frame frame;
    frame.geometry = geometry;
    frame.samples.assign(geometry.sample_count(), fill);
    return frame;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

int require_int(const std::map<std::string, std::string>& kv, const std::string& key,
                const std::string& path) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::runtime_error("descriptor " + path + " missing key '" + key + "'");
    return std::stoi(it->second);
}

// Skips PNM whitespace and '#' comments, then reads one unsigned integer.
int read_pnm_int(std::istream& in) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) throw std::runtime_error("malformed PNM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

}  // namespace

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ": expected key=value, got '" + stripped + "'");
        kv[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
    }
    return kv;
}

StreamDescriptor read_descriptor(const std::string& path) {
    const auto kv = read_key_value_file(path);
    StreamDescriptor desc;
    desc.geometry.width = require_int(kv, "width", path);
    desc.geometry.height = require_int(kv, "height", path);
    desc.geometry.channels = require_int(kv, "channels", path);
    desc.frame_count = require_int(kv, "frames", path);
    if (desc.geometry.channels != 1 && desc.geometry.channels != 3)
        throw std::runtime_error("descriptor " + path + ": channels must be 1 or 3");
    return desc;
}

void write_descriptor(const StreamDescriptor& desc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "width=" << desc.geometry.width << "\n"
        << "height=" << desc.geometry.height << "\n"
        << "channels=" << desc.geometry.channels << "\n"
        << "frames=" << desc.frame_count << "\n";
}

Frame read_pnm_frame(std::istream& in) {
    char magic[2];
    if (!in.read(magic, 2)) throw std::runtime_error("truncated PNM stream");
    if (magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        throw std::runtime_error("unsupported PNM magic (need P5 or P6)");
    Frame frame;
    frame.geometry.channels = magic[1] == '6' ? 3 : 1;
    frame.geometry.width = read_pnm_int(in);
    frame.geometry.height = read_pnm_int(in);
    const int maxval = read_pnm_int(in);
    if (maxval != 255) throw std::runtime_error("only maxval 255 PNM supported");
    frame.samples.resize(frame.geometry.sample_count());
    if (!in.read(reinterpret_cast<char*>(frame.samples.data()),
                 static_cast<std::streamsize>(frame.samples.size())))
        throw std::runtime_error("truncated PNM pixel data");
    return frame;
}

std::vector<Frame> read_pnm_stream(const std::string& path, int max_frames) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Frame> frames;
    while (in.peek() != EOF) {
        frames.push_back(read_pnm_frame(in));
        if (max_frames > 0 && static_cast<int>(frames.size()) == max_frames) break;
    }
    if (frames.empty()) throw std::runtime_error(path + ": no frames");
    return frames;
}

void write_pnm_frame(const Frame& frame, std::ostream& out) {
    out << (frame.channels() == 3 ? "P6" : "P5") << "\n"
        << frame.width() << " " << frame.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.samples.data()),
              static_cast<std::streamsize>(frame.samples.size()));
}

void write_pnm(const Frame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_pnm_frame(frame, out);
}

std::vector<Frame> read_raw_stream(const std::string& path, const StreamDescriptor& desc,
                                   int max_frames) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    int count = desc.frame_count;
    if (max_frames > 0 && max_frames < count) count = max_frames;
    std::vector<Frame> frames;
    frames.reserve(count);
    for (int t = 0; t < count; ++t) {
        Frame frame = make_frame(desc.geometry);
        if (!in.read(reinterpret_cast<char*>(frame.samples.data()),
                     static_cast<std::streamsize>(frame.samples.size())))
            throw std::runtime_error(path + ": raw stream shorter than descriptor frames=" +
                                     std::to_string(desc.frame_count));
        frames.push_back(std::move(frame));
    }
    return frames;
}

void write_raw_stream(const std::vector<Frame>& frames, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const Frame& frame : frames)
        out.write(reinterpret_cast<const char*>(frame.samples.data()),
                  static_cast<std::streamsize>(frame.samples.size()));
}

std::vector<Frame> load_frames(const std::string& path, const std::string& descriptor_path,
                               int max_frames) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open " + path);
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();
    if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6'))
        return read_pnm_stream(path, max_frames);
    const std::string desc_path = descriptor_path.empty() ? path + ".desc" : descriptor_path;
    return read_raw_stream(path, read_descriptor(desc_path), max_frames);
}

}  // namespace toklink
