#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "toklink/frame.hpp"

namespace toklink {

// Channel bandwidth ratio: average channel symbols per source pixel.
// symbol_counts holds one entry per frame, zero for untransmitted frames.
double cbr(const std::vector<std::uint64_t>& symbol_counts, std::uint64_t pixels_per_frame,
           std::uint64_t total_frames);

double mse(const Frame& a, const Frame& b);
// 10*log10(255^2/MSE); +inf for identical frames.
double psnr(const Frame& a, const Frame& b);

struct FrameRecord {
    int t = 0;                       // 1-based frame index
    bool is_key = false;
    std::uint64_t k_limit = 0;       // chosen K (0 for non-key frames)
    std::uint64_t bits_net = 0;      // K + b_val*C(K)
    std::uint64_t bits_gross = 0;    // net + framing prefix + CRC
    bool crc_ok = true;
    double psnr_db = 0.0;
    std::uint64_t symbols = 0;       // allocated channel uses (0 if untransmitted)
    std::string status;              // updated / fallback / short_read_padded / interpolated
};

struct RunReport {
    double cbr = 0.0;
    double mean_psnr_db = 0.0;
    std::uint64_t frame_fallbacks = 0;
    std::uint64_t frames_transmitted = 0;
    std::uint64_t bits_sent_net = 0;
    std::uint64_t bits_sent_gross = 0;
    std::uint64_t tokenizer_saturations = 0;
    std::uint64_t infeasible_frames = 0;   // budget below even the framing overhead
    std::vector<FrameRecord> frames;
    std::vector<double> psnr_per_frame() const;
};

// Per-frame CSV. Column order is fixed:
//   t,is_key,K,bits_net,bits_gross,crc_ok,psnr,clip,lpips
// clip/lpips stay empty; they are reserved so externally computed perceptual
// scores can be merged without reshaping the file. A trailing `summary` row
// carries cbr, mean psnr, fallback count and bit totals.
void write_run_csv(const RunReport& report, std::ostream& out);
void write_run_csv(const RunReport& report, const std::string& path);

std::string format_db(double value);  // fixed 6 decimals, "inf" sentinel

}  // namespace toklink
