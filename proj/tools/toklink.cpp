// toklink: token-domain video link simulator.
// Subcommands: tokenize, run, sweep-snr, sweep-cbr.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "toklink/io.hpp"
#include "toklink/sim.hpp"

namespace {

using namespace toklink;

struct CliOptions {
    SimConfig config;
    std::string planning = "per-frame";
    std::string fec = "ideal";
    std::string channel = "awgn";
    bool no_transmit_empty = false;
    std::vector<double> sweep_values;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--input", opts.config.input_path, "input frames (PGM/PPM stream or raw)")
        ->required();
    cmd->add_option("--descriptor", opts.config.descriptor_path,
                    "sidecar descriptor for raw input (default <input>.desc)");
    cmd->add_option("--frames", opts.config.total_frames, "frames to process (0 = all)");
    cmd->add_option("--block-size", opts.config.tokenizer.block_size, "transform block size");
    cmd->add_option("--coeffs", opts.config.tokenizer.coeffs_per_block,
                    "coefficients kept per block");
    cmd->add_option("--bits", opts.config.tokenizer.bits_per_token, "bits per token value");
    cmd->set_config("--config", "", "flat key=value config file");
}

void add_sim_options(CLI::App* cmd, CliOptions& opts) {
    add_common_options(cmd, opts);
    cmd->add_option("--stride", opts.config.stride, "key-frame stride S");
    cmd->add_option("--gop", opts.config.gop_size, "GOP size N");
    cmd->add_option("--cbr", opts.config.cbr_target, "target channel bandwidth ratio R");
    cmd->add_option("--snr", opts.config.snr_db, "channel SNR in dB");
    cmd->add_option("--acm-table", opts.config.acm_table_path,
                    "ACM table file (snr_db code_rate modulation per line)");
    cmd->add_option("--bler", opts.config.bler_target, "ACM block error rate target");
    cmd->add_option("--planning", opts.planning, "per-frame | gop");
    cmd->add_option("--fec", opts.fec, "ideal | repetition | bypass");
    cmd->add_option("--channel", opts.channel, "awgn | bypass");
    cmd->add_option("--seed", opts.config.seed, "RNG seed");
    cmd->add_option("--output", opts.config.output_csv, "per-frame CSV path");
    cmd->add_option("--dump-dir", opts.config.dump_dir, "dump decoded frames as PGM/PPM");
    cmd->add_flag("--no-transmit-empty", opts.no_transmit_empty,
                  "skip frames whose feasible K is 0 instead of sending the framing prefix");
}

void finalize(CliOptions& opts) {
    opts.config.planning = planning_mode_from_name(opts.planning);
    opts.config.fec = fec_mode_from_name(opts.fec);
    opts.config.channel = channel_mode_from_name(opts.channel);
    opts.config.transmit_empty_frames = !opts.no_transmit_empty;
}

void print_summary(const RunReport& report) {
    std::cout << "frames=" << report.frames.size()
              << " transmitted=" << report.frames_transmitted
              << " fallbacks=" << report.frame_fallbacks << " cbr=" << report.cbr
              << " mean_psnr=" << format_db(report.mean_psnr_db)
              << " bits_net=" << report.bits_sent_net
              << " bits_gross=" << report.bits_sent_gross << "\n";
    if (report.infeasible_frames > 0)
        std::cerr << "warning: " << report.infeasible_frames
                  << " frame(s) had a budget below the framing overhead\n";
    if (report.tokenizer_saturations > 0)
        std::cerr << "warning: " << report.tokenizer_saturations
                  << " coefficient(s) saturated the token code range\n";
}

int run_tokenize(const CliOptions& opts, const std::string& output_path) {
    const std::vector<Frame> frames =
        load_frames(opts.config.input_path, opts.config.descriptor_path,
                    opts.config.total_frames);
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot write " + output_path);
    TokenizeStats stats;
    for (std::size_t t = 0; t < frames.size(); ++t) {
        const TokenSequence tokens = tokenize(frames[t], opts.config.tokenizer, &stats);
        out << (t + 1);
        for (std::uint32_t code : tokens.codes) out << ' ' << code;
        out << '\n';
    }
    std::cout << "tokenized " << frames.size() << " frame(s)";
    if (stats.saturated > 0) std::cout << ", " << stats.saturated << " saturated coefficients";
    std::cout << "\n";
    return 0;
}

int run_sweep(const CliOptions& opts, SweepAxis axis, const std::string& output_path) {
    const std::vector<Frame> frames =
        load_frames(opts.config.input_path, opts.config.descriptor_path,
                    opts.config.total_frames);
    const std::vector<RunReport> reports =
        sweep(opts.config, frames, axis, opts.sweep_values);
    if (!output_path.empty()) write_sweep_csv(axis, opts.sweep_values, reports, output_path);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::cout << (axis == SweepAxis::snr ? "snr=" : "cbr=") << opts.sweep_values[i] << " ";
        print_summary(reports[i]);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"token-domain video link simulator"};
    app.require_subcommand(1);

    CliOptions tokenize_opts, run_opts, snr_opts, cbr_opts;
    std::string tokenize_output = "tokens.txt";
    std::string snr_output, cbr_output;

    CLI::App* cmd_tokenize =
        app.add_subcommand("tokenize", "tokenize frames and dump the token streams");
    add_common_options(cmd_tokenize, tokenize_opts);
    cmd_tokenize->add_option("--output", tokenize_output, "token dump path");

    CLI::App* cmd_run = app.add_subcommand("run", "run the end-to-end simulation once");
    add_sim_options(cmd_run, run_opts);

    CLI::App* cmd_snr = app.add_subcommand("sweep-snr", "repeat the run over a list of SNRs");
    add_sim_options(cmd_snr, snr_opts);
    cmd_snr->add_option("--values", snr_opts.sweep_values, "SNR points in dB")->required();
    cmd_snr->add_option("--summary", snr_output, "sweep summary CSV path");

    CLI::App* cmd_cbr = app.add_subcommand("sweep-cbr", "repeat the run over a list of CBRs");
    add_sim_options(cmd_cbr, cbr_opts);
    cmd_cbr->add_option("--values", cbr_opts.sweep_values, "CBR points")->required();
    cmd_cbr->add_option("--summary", cbr_output, "sweep summary CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_tokenize->parsed()) return run_tokenize(tokenize_opts, tokenize_output);
        if (cmd_run->parsed()) {
            finalize(run_opts);
            print_summary(run_simulation(run_opts.config).report);
            return 0;
        }
        if (cmd_snr->parsed()) {
            finalize(snr_opts);
            return run_sweep(snr_opts, SweepAxis::snr, snr_output);
        }
        if (cmd_cbr->parsed()) {
            finalize(cbr_opts);
            return run_sweep(cbr_opts, SweepAxis::cbr, cbr_output);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
