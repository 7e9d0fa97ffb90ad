// pybind11 surface for the toklink core. Frames cross the boundary as
// (height, width) or (height, width, channels) uint8 numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toklink/diff_coder.hpp"
#include "toklink/metrics.hpp"
#include "toklink/phy.hpp"
#include "toklink/rate_planner.hpp"
#include "toklink/sampler.hpp"
#include "toklink/sim.hpp"
#include "toklink/tokenizer.hpp"

namespace py = pybind11;
using namespace toklink;

namespace {

Frame frame_from_array(const py::array_t<std::uint8_t, py::array::c_style>& array) {
    const auto info = array.request();
    if (info.ndim != 2 && info.ndim != 3)
        throw std::invalid_argument("frame array must be HxW or HxWxC uint8");
    Frame frame;
    frame.geometry.height = static_cast<int>(info.shape[0]);
    frame.geometry.width = static_cast<int>(info.shape[1]);
    frame.geometry.channels = info.ndim == 3 ? static_cast<int>(info.shape[2]) : 1;
    const auto* data = static_cast<const std::uint8_t*>(info.ptr);
    frame.samples.assign(data, data + frame.geometry.sample_count());
    return frame;
}

py::array_t<std::uint8_t> frame_to_array(const Frame& frame) {
    py::array_t<std::uint8_t> array(
        frame.channels() == 1
            ? std::vector<py::ssize_t>{frame.height(), frame.width()}
            : std::vector<py::ssize_t>{frame.height(), frame.width(), frame.channels()});
    std::copy(frame.samples.begin(), frame.samples.end(),
              static_cast<std::uint8_t*>(array.request().ptr));
    return array;
}

TokenSequence sequence_from_list(const std::vector<std::uint32_t>& codes) {
    TokenSequence seq;
    seq.codes = codes;
    return seq;
}

ChangeMask mask_from_bits(const std::vector<std::uint8_t>& bits) {
    ChangeMask mask;
    mask.bits = bits;
    mask.prefix_counts.resize(bits.size() + 1);
    mask.prefix_counts[0] = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        mask.prefix_counts[i + 1] = mask.prefix_counts[i] + (bits[i] ? 1 : 0);
    return mask;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "token-domain video link simulator core";
    m.attr("ZERO_FLAG_TOKEN") = kZeroFlagToken;

    py::class_<TokenizerConfig>(m, "TokenizerConfig")
        .def(py::init<>())
        .def_readwrite("block_size", &TokenizerConfig::block_size)
        .def_readwrite("coeffs_per_block", &TokenizerConfig::coeffs_per_block)
        .def_readwrite("bits_per_token", &TokenizerConfig::bits_per_token)
        .def_readwrite("quant_steps", &TokenizerConfig::quant_steps);

    m.def(
        "tokenize",
        [](const py::array_t<std::uint8_t, py::array::c_style>& array,
           const TokenizerConfig& cfg) {
            return tokenize(frame_from_array(array), cfg).codes;
        },
        py::arg("frame"), py::arg("config") = TokenizerConfig());
    m.def(
        "detokenize",
        [](const std::vector<std::uint32_t>& codes, int width, int height, int channels,
           const TokenizerConfig& cfg) {
            return frame_to_array(
                detokenize(sequence_from_list(codes), {width, height, channels}, cfg));
        },
        py::arg("tokens"), py::arg("width"), py::arg("height"), py::arg("channels") = 1,
        py::arg("config") = TokenizerConfig());
    m.def("zero_state", [](std::size_t length) { return zero_state(length).codes; },
          py::arg("length"));

    m.def(
        "change_mask",
        [](const std::vector<std::uint32_t>& current, const std::vector<std::uint32_t>& ref) {
            return change_mask(sequence_from_list(current), sequence_from_list(ref)).bits;
        },
        py::arg("current"), py::arg("reference"));
    m.def(
        "frame_cost",
        [](std::size_t k, const std::vector<std::uint8_t>& mask_bits, int bits_per_token) {
            return frame_cost(k, mask_from_bits(mask_bits), bits_per_token);
        },
        py::arg("k"), py::arg("mask"), py::arg("bits_per_token") = 12);
    m.def(
        "pack",
        [](const std::vector<std::uint32_t>& tokens, const std::vector<std::uint8_t>& mask_bits,
           std::size_t k, int bits_per_token) {
            const FramePacket packet =
                pack(sequence_from_list(tokens), mask_from_bits(mask_bits), k, bits_per_token);
            return py::bytes(reinterpret_cast<const char*>(packet.payload.data()),
                             packet.payload.size());
        },
        py::arg("tokens"), py::arg("mask"), py::arg("k"), py::arg("bits_per_token") = 12);
    m.def(
        "unpack",
        [](const py::bytes& payload, int bits_per_token) {
            std::string raw = payload;
            const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
            const UnpackResult result = unpack(bytes, bits_per_token);
            py::dict out;
            out["k"] = result.k_limit;
            out["mask"] = result.mask_bits;
            out["values"] = result.values;
            out["crc_ok"] = result.crc_ok;
            out["short_read"] = result.short_read;
            return out;
        },
        py::arg("payload"), py::arg("bits_per_token") = 12);

    m.def(
        "allocate_symbols",
        [](double cbr_target, std::uint64_t pixels, std::uint64_t frames,
           std::uint64_t key_count) {
            return allocate_symbols(cbr_target, pixels, frames, key_count)
                .symbols_per_key_frame;
        },
        py::arg("cbr_target"), py::arg("pixels_per_frame"), py::arg("total_frames"),
        py::arg("key_count"));
    m.def("plan_gop",
          [](const std::vector<std::uint64_t>& ks) {
              return plan_gop(std::span<const std::uint64_t>(ks));
          },
          py::arg("per_frame_k"));
    m.def(
        "max_feasible_k",
        [](const std::vector<std::uint8_t>& mask_bits, int bits_per_token,
           std::uint64_t budget, std::uint64_t overhead) -> py::object {
            const auto k =
                max_feasible_k(mask_from_bits(mask_bits), bits_per_token, budget, overhead);
            if (!k) return py::none();
            return py::int_(*k);
        },
        py::arg("mask"), py::arg("bits_per_token"), py::arg("budget_bits"),
        py::arg("overhead_bits") = kPacketOverheadBits);

    py::class_<McsEntry>(m, "McsEntry")
        .def_readonly("snr_threshold_db", &McsEntry::snr_threshold_db)
        .def_readonly("code_rate", &McsEntry::code_rate)
        .def_property_readonly("modulation",
                               [](const McsEntry& e) { return modulation_name(e.modulation); })
        .def_property_readonly("bits_per_symbol", &McsEntry::bits_per_symbol);
    py::class_<AcmTable>(m, "AcmTable")
        .def_readonly("rows", &AcmTable::rows)
        .def_readonly("bler_target", &AcmTable::bler_target);
    m.def("standard_acm_table", &AcmTable::standard);
    m.def(
        "select_mcs",
        [](double snr_db, const AcmTable& table) { return select_mcs({snr_db}, table); },
        py::arg("snr_db"), py::arg("table"));
    m.def(
        "deliverable_bits",
        [](const McsEntry& mcs, std::uint64_t symbols) { return deliverable_bits(mcs, symbols); },
        py::arg("mcs"), py::arg("symbols"));

    m.def(
        "modulate",
        [](const py::bytes& payload, const std::string& modulation) {
            std::string raw = payload;
            const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
            return modulate(bytes, bytes.size() * 8, modulation_from_name(modulation));
        },
        py::arg("payload"), py::arg("modulation") = "QPSK");
    m.def(
        "awgn",
        [](const SymbolBlock& block, double snr_db, std::uint64_t seed) {
            return awgn(block, snr_db, seed);
        },
        py::arg("symbols"), py::arg("snr_db"), py::arg("seed") = 1);
    m.def(
        "demodulate",
        [](const SymbolBlock& block, const std::string& modulation) {
            const auto bytes = demodulate(block, modulation_from_name(modulation));
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("symbols"), py::arg("modulation") = "QPSK");

    m.def(
        "key_indices",
        [](int total_frames, int stride, int gop_size) {
            return key_indices(total_frames, stride, gop_size).key_frames;
        },
        py::arg("total_frames"), py::arg("stride"), py::arg("gop_size") = 32);
    m.def(
        "neighbors",
        [](int t, int total_frames, int stride) {
            const Neighbors nb = neighbors(t, key_indices(total_frames, stride));
            py::dict out;
            out["prev_key"] = nb.prev_key;
            out["next_key"] = nb.next_key ? py::object(py::int_(nb.next_key)) : py::none();
            out["alpha"] = nb.alpha;
            out["is_key"] = nb.is_key;
            return out;
        },
        py::arg("t"), py::arg("total_frames"), py::arg("stride"));
    m.def(
        "interpolate",
        [](const py::array_t<std::uint8_t, py::array::c_style>& a,
           const py::array_t<std::uint8_t, py::array::c_style>& b, double alpha) {
            return frame_to_array(interpolate(frame_from_array(a), frame_from_array(b), alpha));
        },
        py::arg("frame_a"), py::arg("frame_b"), py::arg("alpha"));

    m.def("cbr", &cbr, py::arg("symbol_counts"), py::arg("pixels_per_frame"),
          py::arg("total_frames"));
    m.def(
        "psnr",
        [](const py::array_t<std::uint8_t, py::array::c_style>& a,
           const py::array_t<std::uint8_t, py::array::c_style>& b) {
            return psnr(frame_from_array(a), frame_from_array(b));
        },
        py::arg("frame_a"), py::arg("frame_b"));

    m.def(
        "run_simulation",
        [](const std::vector<py::array_t<std::uint8_t, py::array::c_style>>& frame_arrays,
           double cbr_target, double snr_db, int stride, int gop_size, const std::string& fec,
           const std::string& channel, const std::string& planning, std::uint64_t seed,
           const TokenizerConfig& tokenizer, const std::string& output_csv) {
            SimConfig config;
            config.cbr_target = cbr_target;
            config.snr_db = snr_db;
            config.stride = stride;
            config.gop_size = gop_size;
            config.fec = fec_mode_from_name(fec);
            config.channel = channel_mode_from_name(channel);
            config.planning = planning_mode_from_name(planning);
            config.seed = seed;
            config.tokenizer = tokenizer;
            config.output_csv = output_csv;
            std::vector<Frame> frames;
            frames.reserve(frame_arrays.size());
            for (const auto& array : frame_arrays) frames.push_back(frame_from_array(array));
            const RunOutput output = run_simulation(config, frames);
            py::dict report;
            report["cbr"] = output.report.cbr;
            report["mean_psnr"] = output.report.mean_psnr_db;
            report["fallbacks"] = output.report.frame_fallbacks;
            report["frames_transmitted"] = output.report.frames_transmitted;
            report["bits_net"] = output.report.bits_sent_net;
            report["bits_gross"] = output.report.bits_sent_gross;
            report["psnr_per_frame"] = output.report.psnr_per_frame();
            py::list decoded;
            for (const Frame& frame : output.decoded) decoded.append(frame_to_array(frame));
            report["decoded"] = decoded;
            return report;
        },
        py::arg("frames"), py::arg("cbr_target") = 4e-4, py::arg("snr_db") = 6.0,
        py::arg("stride") = 1, py::arg("gop_size") = 32, py::arg("fec") = "ideal",
        py::arg("channel") = "awgn", py::arg("planning") = "per-frame", py::arg("seed") = 1,
        py::arg("tokenizer") = TokenizerConfig(), py::arg("output_csv") = "");
}
