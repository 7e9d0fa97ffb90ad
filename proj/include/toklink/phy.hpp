#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace toklink {

enum class ModulationScheme { qpsk, qam16 };

const char* modulation_name(ModulationScheme m);
ModulationScheme modulation_from_name(const std::string& name);

struct McsEntry {
    double snr_threshold_db = 0.0;
    double code_rate = 0.0;  // (0, 1]
    ModulationScheme modulation = ModulationScheme::qpsk;

    int bits_per_symbol() const { return modulation == ModulationScheme::qam16 ? 4 : 2; }
    double spectral_efficiency() const { return code_rate * bits_per_symbol(); }
};

struct AcmTable {
    std::vector<McsEntry> rows;   // sorted by snr_threshold_db, strictly increasing
    double bler_target = 0.002;

    // The 3GPP-style ladder used throughout: QPSK 0.245/0.301/0.514/0.663 at
    // -2/0/2/4 dB, 16QAM 0.424/0.540/0.643 at 6/8/10 dB.
    static AcmTable standard();
    // Flat text file, one row per line: snr_db code_rate modulation
    static AcmTable from_file(const std::string& path);
    void validate() const;
};

struct ChannelEstimate {
    double snr_db = 0.0;  // genie-shared between transmitter and receiver
};

// Highest row whose threshold does not exceed the estimate; clamps to the
// lowest row below the table.
McsEntry select_mcs(ChannelEstimate estimate, const AcmTable& table);

// Unit-average-energy complex baseband symbols.
using SymbolBlock = std::vector<std::complex<double>>;

// Gray-mapped QPSK / 16QAM over MSB-first packed bits; bit_count is padded
// with zeros to a multiple of bits-per-symbol.
SymbolBlock modulate(const std::vector<std::uint8_t>& bytes, std::size_t bit_count,
                     ModulationScheme scheme);

// Adds complex AWGN with per-symbol noise power 10^(-snr_db/10); an infinite
// SNR bypasses the channel.
void awgn(SymbolBlock& block, double snr_db, std::mt19937_64& rng);
SymbolBlock awgn(const SymbolBlock& block, double snr_db, std::uint64_t seed);

// Hard-decision nearest-point demodulation back to packed bits.
std::vector<std::uint8_t> demodulate(const SymbolBlock& block, ModulationScheme scheme);

// FEC abstraction. The paper-grade LDPC is out of scope; two reference
// codecs stand behind the same interface:
//   ideal      - identity payload path; the whole channel is collapsed into a
//                frame-level Bernoulli(bler_target) failure draw
//   repetition - each bit repeated floor(1/code_rate) times, majority decode,
//                running over the real modulation/AWGN path
//   bypass     - identity, always ok (diagnostics)
enum class FecMode { bypass, ideal, repetition };

const char* fec_mode_name(FecMode mode);
FecMode fec_mode_from_name(const std::string& name);

struct FecDecodeResult {
    std::vector<std::uint8_t> bytes;
    bool block_ok = true;
};

class FecCodec {
public:
    FecCodec(FecMode mode, const McsEntry& mcs, double bler_target);

    FecMode mode() const { return mode_; }
    int repetition_factor() const { return repetition_factor_; }
    // Repetition never hits the MCS rate exactly unless 1/rate is integral.
    bool rate_mismatch() const;

    std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& bytes) const;
    FecDecodeResult decode(const std::vector<std::uint8_t>& bytes, std::mt19937_64& rng) const;

private:
    FecMode mode_;
    double code_rate_;
    double bler_target_;
    int repetition_factor_ = 1;
};

}  // namespace toklink
