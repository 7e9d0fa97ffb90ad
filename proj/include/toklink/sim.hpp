#pragma once

#include <functional>
#include <string>
#include <vector>

#include "toklink/frame.hpp"
#include "toklink/metrics.hpp"
#include "toklink/phy.hpp"
#include "toklink/receiver.hpp"
#include "toklink/sampler.hpp"
#include "toklink/tokenizer.hpp"

namespace toklink {

enum class PlanningMode { per_frame, gop };
enum class ChannelMode { awgn, bypass };

PlanningMode planning_mode_from_name(const std::string& name);
ChannelMode channel_mode_from_name(const std::string& name);

struct SimConfig {
    std::string input_path;
    std::string descriptor_path;        // optional sidecar for raw input
    int total_frames = 0;               // T; 0 = whole input
    int stride = 1;                     // S
    int gop_size = 32;                  // N
    double cbr_target = 4e-4;           // R
    double snr_db = 6.0;
    std::string acm_table_path;         // empty = built-in ladder
    double bler_target = 0.002;
    PlanningMode planning = PlanningMode::per_frame;
    FecMode fec = FecMode::ideal;
    ChannelMode channel = ChannelMode::awgn;
    std::uint64_t seed = 1;
    std::string output_csv;
    std::string dump_dir;               // decoded-frame PGM/PPM dump, empty = off
    bool transmit_empty_frames = true;  // K*=0 still sends the framing prefix
    BoundaryMode boundary = BoundaryMode::copy_nearest;
    TokenizerConfig tokenizer;
};

SimConfig sim_config_from_file(const std::string& path);

// Per-key-frame observer for tests and debugging tools.
struct KeyFrameTrace {
    int t;
    const TokenSequence& tx_tokens;
    const ChangeMask& mask;
    std::uint64_t k_limit;
    std::uint64_t budget_bits;
    ReceiveStatus status;
    bool transmitted;
    const ReceiverState& state_after;
};
using KeyFrameObserver = std::function<void(const KeyFrameTrace&)>;

struct RunOutput {
    RunReport report;
    std::vector<Frame> decoded;  // one per frame, in order
};

// Full chain per key frame: tokenize -> change mask -> MCS/budget -> top-K
// pack -> FEC -> modulate -> channel -> demodulate -> FEC decode -> state
// update -> detokenize. Non-key frames are interpolated from decoded anchors.
RunOutput run_simulation(const SimConfig& config, const std::vector<Frame>& frames,
                         const KeyFrameObserver& observer = {});
RunOutput run_simulation(const SimConfig& config);  // loads config.input_path

enum class SweepAxis { snr, cbr };

// Independent runs per axis value (seed offset by the value index); returns
// reports in input order and optionally writes a one-row-per-run summary CSV:
//   axis,value,cbr,mean_psnr,fallbacks,bits_net,bits_gross
std::vector<RunReport> sweep(const SimConfig& config, const std::vector<Frame>& frames,
                             SweepAxis axis, const std::vector<double>& values);
void write_sweep_csv(SweepAxis axis, const std::vector<double>& values,
                     const std::vector<RunReport>& reports, const std::string& path);

}  // namespace toklink
