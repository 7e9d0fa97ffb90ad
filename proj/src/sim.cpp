#include "toklink/sim.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "toklink/io.hpp"
#include "toklink/rate_planner.hpp"

namespace toklink {

PlanningMode planning_mode_from_name(const std::string& name) {
    if (name == "per-frame" || name == "per_frame") return PlanningMode::per_frame;
    if (name == "gop") return PlanningMode::gop;
    throw std::invalid_argument("unknown planning mode '" + name + "'");
}

ChannelMode channel_mode_from_name(const std::string& name) {
    if (name == "awgn") return ChannelMode::awgn;
    if (name == "bypass") return ChannelMode::bypass;
    throw std::invalid_argument("unknown channel mode '" + name + "'");
}

SimConfig sim_config_from_file(const std::string& path) {
    const auto kv = read_key_value_file(path);
    SimConfig config;
    const auto get = [&](const std::string& key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("input")) config.input_path = *v;
    if (const auto* v = get("descriptor")) config.descriptor_path = *v;
    if (const auto* v = get("frames")) config.total_frames = std::stoi(*v);
    if (const auto* v = get("stride")) config.stride = std::stoi(*v);
    if (const auto* v = get("gop")) config.gop_size = std::stoi(*v);
    if (const auto* v = get("cbr")) config.cbr_target = std::stod(*v);
    if (const auto* v = get("snr")) config.snr_db = std::stod(*v);
    if (const auto* v = get("acm_table")) config.acm_table_path = *v;
    if (const auto* v = get("bler_target")) config.bler_target = std::stod(*v);
    if (const auto* v = get("planning")) config.planning = planning_mode_from_name(*v);
    if (const auto* v = get("fec")) config.fec = fec_mode_from_name(*v);
    if (const auto* v = get("channel")) config.channel = channel_mode_from_name(*v);
    if (const auto* v = get("seed")) config.seed = std::stoull(*v);
    if (const auto* v = get("output")) config.output_csv = *v;
    if (const auto* v = get("dump_dir")) config.dump_dir = *v;
    if (const auto* v = get("transmit_empty")) config.transmit_empty_frames = *v != "0";
    if (const auto* v = get("block_size")) config.tokenizer.block_size = std::stoi(*v);
    if (const auto* v = get("coeffs_per_block"))
        config.tokenizer.coeffs_per_block = std::stoi(*v);
    if (const auto* v = get("bits_per_token")) config.tokenizer.bits_per_token = std::stoi(*v);
    return config;
}

namespace {

struct KeyPlanEntry {
    TokenSequence tokens;
    ChangeMask mask;
    std::optional<std::uint64_t> k_star;
};

std::string frame_dump_path(const std::string& dir, int t, int channels) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05d.%s", t, channels == 3 ? "ppm" : "pgm");
    return dir + "/" + name;
}

}  // namespace

RunOutput run_simulation(const SimConfig& config, const std::vector<Frame>& frames,
                         const KeyFrameObserver& observer) {
    if (frames.empty()) throw std::invalid_argument("run_simulation: no frames");
    const int total = config.total_frames > 0
                          ? std::min<int>(config.total_frames, static_cast<int>(frames.size()))
                          : static_cast<int>(frames.size());
    const FrameGeometry geometry = frames.front().geometry;
    for (int t = 0; t < total; ++t)
        if (frames[t].geometry != geometry)
            throw std::invalid_argument("run_simulation: frame geometry changes mid-stream");

    const TokenizerConfig& tok_cfg = config.tokenizer;
    const std::size_t token_len = token_count(geometry, tok_cfg);
    const SamplingPlan plan = key_indices(total, config.stride, config.gop_size);

    AcmTable acm = config.acm_table_path.empty() ? AcmTable::standard()
                                                 : AcmTable::from_file(config.acm_table_path);
    acm.bler_target = config.bler_target;
    const McsEntry mcs = select_mcs({config.snr_db}, acm);
    const std::uint64_t k_symbols =
        allocate_symbols(config.cbr_target, geometry.sample_count(), total,
                         plan.key_frames.size())
            .symbols_per_key_frame;
    const std::uint64_t budget = deliverable_bits(mcs, k_symbols);
    const std::uint64_t symbol_bit_capacity = k_symbols * mcs.bits_per_symbol();
    const FecCodec fec(config.fec, mcs, acm.bler_target);
    // The ideal codec stands for a capacity-achieving code run exactly at its
    // BLER target: frame loss is the Bernoulli draw, not symbol noise.
    const bool corrupt_symbols =
        config.channel == ChannelMode::awgn && config.fec != FecMode::ideal;

    std::mt19937_64 rng(config.seed);
    ReceiverState state(token_len);
    TokenSequence tx_reference = zero_state(token_len);
    std::vector<Frame> decoded(total);
    std::vector<std::uint64_t> symbol_counts(total, 0);

    RunOutput output;
    RunReport& report = output.report;
    report.frames.resize(total);

    // GOP-stabilized planning needs every member's K* before transmission;
    // token/mask chains are channel-independent, so precompute them.
    std::vector<KeyPlanEntry> key_plan(plan.key_frames.size());
    std::vector<std::uint64_t> gop_k;  // per GOP index, only for gop mode
    {
        TokenSequence reference = zero_state(token_len);
        int last_gop = -1;
        TokenizeStats stats;
        for (std::size_t i = 0; i < plan.key_frames.size(); ++i) {
            const int t = plan.key_frames[i];
            if (plan.gop_index(t) != last_gop) {
                reference = zero_state(token_len);
                last_gop = plan.gop_index(t);
            }
            KeyPlanEntry& entry = key_plan[i];
            entry.tokens = tokenize(frames[t - 1], tok_cfg, &stats);
            entry.mask = change_mask(entry.tokens, reference);
            entry.k_star =
                max_feasible_k(entry.mask, tok_cfg.bits_per_token, budget, kPacketOverheadBits);
            if (entry.k_star && *entry.k_star > kMaxPackedK) entry.k_star = kMaxPackedK;
            reference = entry.tokens;
        }
        report.tokenizer_saturations = stats.saturated;
    }
    if (config.planning == PlanningMode::gop) {
        const int gop_count = (total + config.gop_size - 1) / config.gop_size;
        gop_k.assign(gop_count, 0);
        std::vector<std::vector<std::uint64_t>> per_gop(gop_count);
        for (std::size_t i = 0; i < plan.key_frames.size(); ++i)
            if (key_plan[i].k_star)
                per_gop[plan.gop_index(plan.key_frames[i])].push_back(*key_plan[i].k_star);
        for (int g = 0; g < gop_count; ++g)
            if (!per_gop[g].empty()) gop_k[g] = plan_gop(per_gop[g]);
    }

    int last_gop = -1;
    std::size_t key_index = 0;
    for (int t = 1; t <= total; ++t) {
        FrameRecord& record = report.frames[t - 1];
        record.t = t;
        if (!plan.is_key(t)) continue;  // interpolated after the key pass
        record.is_key = true;

        if (plan.gop_index(t) != last_gop) {
            state.reset();
            last_gop = plan.gop_index(t);
        }
        const KeyPlanEntry& entry = key_plan[key_index++];

        std::optional<std::uint64_t> chosen = entry.k_star;
        if (config.planning == PlanningMode::gop && chosen)
            chosen = gop_k[plan.gop_index(t)];
        const bool transmit =
            chosen.has_value() && (*chosen > 0 || config.transmit_empty_frames);

        ReceiveStatus status = ReceiveStatus::fallback;
        if (!transmit) {
            // Budget cannot even carry the framing prefix: nothing on the air.
            if (!chosen) ++report.infeasible_frames;
            ++report.frame_fallbacks;
            record.crc_ok = false;
            record.status = "fallback";
        } else {
            std::uint64_t k_limit = *chosen;
            FramePacket packet = pack(entry.tokens, entry.mask, k_limit, tok_cfg.bits_per_token);
            std::vector<std::uint8_t> coded = fec.encode(packet.payload);
            // Byte padding can push a full repetition frame past the symbol
            // budget; back off K until the coded frame fits.
            while (k_limit > 0 && coded.size() * 8 > symbol_bit_capacity) {
                --k_limit;
                packet = pack(entry.tokens, entry.mask, k_limit, tok_cfg.bits_per_token);
                coded = fec.encode(packet.payload);
            }
            SymbolBlock symbols = modulate(coded, coded.size() * 8, mcs.modulation);
            if (corrupt_symbols) awgn(symbols, config.snr_db, rng);
            const std::vector<std::uint8_t> demodulated = demodulate(symbols, mcs.modulation);
            const FecDecodeResult decoded_bits = fec.decode(demodulated, rng);

            status = receive_frame(state, decoded_bits.bytes, tok_cfg.bits_per_token,
                                   decoded_bits.block_ok);
            if (status == ReceiveStatus::fallback) ++report.frame_fallbacks;

            symbol_counts[t - 1] = k_symbols;
            record.k_limit = k_limit;
            record.bits_net = frame_cost(k_limit, entry.mask, tok_cfg.bits_per_token);
            record.bits_gross = record.bits_net + kPacketOverheadBits;
            record.crc_ok = status != ReceiveStatus::fallback;
            record.symbols = k_symbols;
            record.status = receive_status_name(status);
            report.bits_sent_net += record.bits_net;
            report.bits_sent_gross += record.bits_gross;
            ++report.frames_transmitted;
        }
        decoded[t - 1] = reconstruct(state, geometry, tok_cfg);
        if (observer)
            observer(KeyFrameTrace{t, entry.tokens, entry.mask, record.k_limit, budget, status,
                                   transmit, state});
    }

    for (int t = 1; t <= total; ++t) {
        if (plan.is_key(t)) continue;
        const Neighbors nb = neighbors(t, plan);
        // Both boundary modes propagate the last decoded key frame when no
        // later anchor exists.
        decoded[t - 1] = nb.next_key == 0
                             ? decoded[nb.prev_key - 1]
                             : interpolate(decoded[nb.prev_key - 1], decoded[nb.next_key - 1],
                                           nb.alpha);
        report.frames[t - 1].status = "interpolated";
    }

    double psnr_sum = 0.0;
    for (int t = 1; t <= total; ++t) {
        report.frames[t - 1].psnr_db = psnr(frames[t - 1], decoded[t - 1]);
        psnr_sum += report.frames[t - 1].psnr_db;
    }
    report.mean_psnr_db = psnr_sum / total;
    report.cbr = cbr(symbol_counts, geometry.sample_count(), total);

    if (!config.output_csv.empty()) write_run_csv(report, config.output_csv);
    if (!config.dump_dir.empty()) {
        std::filesystem::create_directories(config.dump_dir);
        for (int t = 1; t <= total; ++t)
            write_pnm(decoded[t - 1], frame_dump_path(config.dump_dir, t, geometry.channels));
    }

    output.decoded = std::move(decoded);
    return output;
}

RunOutput run_simulation(const SimConfig& config) {
    if (config.input_path.empty())
        throw std::invalid_argument("run_simulation: no input path configured");
    const std::vector<Frame> frames =
        load_frames(config.input_path, config.descriptor_path, config.total_frames);
    return run_simulation(config, frames);
}

std::vector<RunReport> sweep(const SimConfig& config, const std::vector<Frame>& frames,
                             SweepAxis axis, const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sweep: no values");
    std::vector<std::future<RunReport>> futures;
    futures.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        SimConfig point = config;
        point.seed = config.seed + i;  // independent seeded runs
        point.output_csv.clear();
        point.dump_dir.clear();
        if (axis == SweepAxis::snr)
            point.snr_db = values[i];
        else
            point.cbr_target = values[i];
        futures.push_back(std::async(std::launch::async, [point, &frames]() {
            return run_simulation(point, frames).report;
        }));
    }
    std::vector<RunReport> reports;
    reports.reserve(values.size());
    for (auto& f : futures) reports.push_back(f.get());
    return reports;
}

void write_sweep_csv(SweepAxis axis, const std::vector<double>& values,
                     const std::vector<RunReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "axis,value,cbr,mean_psnr,fallbacks,bits_net,bits_gross\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::ostringstream cbr_text;
        cbr_text.setf(std::ios::scientific);
        cbr_text.precision(9);
        cbr_text << reports[i].cbr;
        out << (axis == SweepAxis::snr ? "snr" : "cbr") << ',' << values[i] << ','
            << cbr_text.str() << ',' << format_db(reports[i].mean_psnr_db) << ','
            << reports[i].frame_fallbacks << ',' << reports[i].bits_sent_net << ','
            << reports[i].bits_sent_gross << "\n";
    }
}

}  // namespace toklink
