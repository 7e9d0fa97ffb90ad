#include "toklink/metrics.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace toklink {

double cbr(const std::vector<std::uint64_t>& symbol_counts, std::uint64_t pixels_per_frame,
           std::uint64_t total_frames) {
    if (symbol_counts.size() != total_frames)
        throw std::invalid_argument("cbr: need one symbol count per frame");
    if (pixels_per_frame == 0 || total_frames == 0)
        throw std::invalid_argument("cbr: empty stream");
    double sum = 0.0;
    for (std::uint64_t k : symbol_counts)
        sum += static_cast<double>(k) / static_cast<double>(pixels_per_frame);
    return sum / static_cast<double>(total_frames);
}

double mse(const Frame& a, const Frame& b) {
    if (a.geometry != b.geometry) throw std::invalid_argument("mse: geometry mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double d = static_cast<double>(a.samples[i]) - b.samples[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.samples.size());
}

double psnr(const Frame& a, const Frame& b) {
    const double err = mse(a, b);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / err);
}

std::vector<double> RunReport::psnr_per_frame() const {
    std::vector<double> out;
    out.reserve(frames.size());
    for (const FrameRecord& record : frames) out.push_back(record.psnr_db);
    return out;
}

std::string format_db(double value) {
    if (std::isinf(value)) return "inf";
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    out << value;
    return out.str();
}

void write_run_csv(const RunReport& report, std::ostream& out) {
    out << "t,is_key,K,bits_net,bits_gross,crc_ok,psnr,clip,lpips\n";
    for (const FrameRecord& record : report.frames) {
        out << record.t << ',' << (record.is_key ? 1 : 0) << ',' << record.k_limit << ','
            << record.bits_net << ',' << record.bits_gross << ',' << (record.crc_ok ? 1 : 0)
            << ',' << format_db(record.psnr_db) << ",,\n";
    }
    std::ostringstream cbr_text;
    cbr_text.setf(std::ios::scientific);
    cbr_text.precision(9);
    cbr_text << report.cbr;
    out << "summary,cbr=" << cbr_text.str() << ",mean_psnr=" << format_db(report.mean_psnr_db)
        << ",fallbacks=" << report.frame_fallbacks << ",bits_net=" << report.bits_sent_net
        << ",bits_gross=" << report.bits_sent_gross << ",,,\n";
}

void write_run_csv(const RunReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_run_csv(report, out);
}

}  // namespace toklink
