#include "toklink/phy.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "toklink/bits.hpp"

namespace toklink {

const char* modulation_name(ModulationScheme m) {
    return m == ModulationScheme::qam16 ? "16QAM" : "QPSK";
}

ModulationScheme modulation_from_name(const std::string& name) {
    if (name == "QPSK" || name == "qpsk" || name == "4") return ModulationScheme::qpsk;
    if (name == "16QAM" || name == "16qam" || name == "QAM16" || name == "16")
        return ModulationScheme::qam16;
    throw std::invalid_argument("unknown modulation '" + name + "'");
}

AcmTable AcmTable::standard() {
    AcmTable table;
    table.rows = {
        {-2.0, 0.245, ModulationScheme::qpsk},
        {0.0, 0.301, ModulationScheme::qpsk},
        {2.0, 0.514, ModulationScheme::qpsk},
        {4.0, 0.663, ModulationScheme::qpsk},
        {6.0, 0.424, ModulationScheme::qam16},
        {8.0, 0.540, ModulationScheme::qam16},
        {10.0, 0.643, ModulationScheme::qam16},
    };
    return table;
}

AcmTable AcmTable::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ACM table " + path);
    AcmTable table;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        McsEntry entry;
        std::string modulation;
        if (row >> entry.snr_threshold_db >> entry.code_rate >> modulation) {
            entry.modulation = modulation_from_name(modulation);
            table.rows.push_back(entry);
        }
    }
    table.validate();
    return table;
}

void AcmTable::validate() const {
    if (rows.empty()) throw std::invalid_argument("ACM table is empty");
    if (!(bler_target > 0.0 && bler_target < 1.0))
        throw std::invalid_argument("BLER target must be in (0,1)");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!(rows[i].code_rate > 0.0 && rows[i].code_rate <= 1.0))
            throw std::invalid_argument("ACM code rate out of (0,1]");
        if (i > 0) {
            if (!(rows[i].snr_threshold_db > rows[i - 1].snr_threshold_db))
                throw std::invalid_argument("ACM thresholds must increase strictly");
            if (rows[i].spectral_efficiency() < rows[i - 1].spectral_efficiency())
                throw std::invalid_argument("ACM spectral efficiency must be non-decreasing");
        }
    }
}

McsEntry select_mcs(ChannelEstimate estimate, const AcmTable& table) {
    table.validate();
    McsEntry chosen = table.rows.front();
    for (const McsEntry& row : table.rows)
        if (row.snr_threshold_db <= estimate.snr_db) chosen = row;
    return chosen;
}

namespace {

constexpr double kQpskScale = 0.7071067811865476;   // 1/sqrt(2)
constexpr double kQam16Scale = 0.31622776601683794; // 1/sqrt(10)

// Per-axis Gray code over {-3,-1,+1,+3}: 00 01 11 10 walks the axis.
inline double qam16_level(unsigned bits2) {
    switch (bits2) {
        case 0b00: return -3.0;
        case 0b01: return -1.0;
        case 0b11: return +1.0;
        default: return +3.0;  // 0b10
    }
}

inline unsigned qam16_bits(double level) {
    if (level < -2.0) return 0b00;
    if (level < 0.0) return 0b01;
    if (level < 2.0) return 0b11;
    return 0b10;
}

}  // namespace

SymbolBlock modulate(const std::vector<std::uint8_t>& bytes, std::size_t bit_count,
                     ModulationScheme scheme) {
    if (bit_count > bytes.size() * 8)
        throw std::invalid_argument("modulate: bit_count exceeds the byte buffer");
    const int bps = scheme == ModulationScheme::qam16 ? 4 : 2;
    const std::size_t symbols = (bit_count + bps - 1) / bps;
    SymbolBlock block;
    block.reserve(symbols);
    BitReader reader(bytes.data(), bytes.size() * 8);
    std::size_t consumed = 0;
    for (std::size_t s = 0; s < symbols; ++s) {
        unsigned word = 0;
        for (int i = 0; i < bps; ++i) {
            const bool bit = consumed < bit_count ? reader.read_bit() : false;  // zero pad
            ++consumed;
            word = (word << 1) | (bit ? 1u : 0u);
        }
        if (scheme == ModulationScheme::qpsk) {
            const double re = (word & 0b10) ? -kQpskScale : kQpskScale;
            const double im = (word & 0b01) ? -kQpskScale : kQpskScale;
            block.emplace_back(re, im);
        } else {
            const double re = qam16_level(word >> 2) * kQam16Scale;
            const double im = qam16_level(word & 0b11) * kQam16Scale;
            block.emplace_back(re, im);
        }
    }
    return block;
}

void awgn(SymbolBlock& block, double snr_db, std::mt19937_64& rng) {
    if (std::isinf(snr_db) && snr_db > 0.0) return;
    const double noise_power = std::pow(10.0, -snr_db / 10.0);
    std::normal_distribution<double> component(0.0, std::sqrt(noise_power / 2.0));
    for (std::complex<double>& symbol : block)
        symbol += std::complex<double>(component(rng), component(rng));
}

SymbolBlock awgn(const SymbolBlock& block, double snr_db, std::uint64_t seed) {
    SymbolBlock noisy = block;
    std::mt19937_64 rng(seed);
    awgn(noisy, snr_db, rng);
    return noisy;
}

std::vector<std::uint8_t> demodulate(const SymbolBlock& block, ModulationScheme scheme) {
    BitWriter writer;
    for (const std::complex<double>& symbol : block) {
        if (scheme == ModulationScheme::qpsk) {
            writer.put_bit(symbol.real() < 0.0);
            writer.put_bit(symbol.imag() < 0.0);
        } else {
            writer.put_bits(qam16_bits(symbol.real() / kQam16Scale), 2);
            writer.put_bits(qam16_bits(symbol.imag() / kQam16Scale), 2);
        }
    }
    return writer.take_bytes();
}

const char* fec_mode_name(FecMode mode) {
    switch (mode) {
        case FecMode::bypass: return "bypass";
        case FecMode::ideal: return "ideal";
        default: return "repetition";
    }
}

FecMode fec_mode_from_name(const std::string& name) {
    if (name == "bypass") return FecMode::bypass;
    if (name == "ideal") return FecMode::ideal;
    if (name == "repetition") return FecMode::repetition;
    throw std::invalid_argument("unknown FEC mode '" + name + "'");
}

FecCodec::FecCodec(FecMode mode, const McsEntry& mcs, double bler_target)
    : mode_(mode), code_rate_(mcs.code_rate), bler_target_(bler_target) {
    if (mode_ == FecMode::repetition)
        repetition_factor_ = std::max(1, static_cast<int>(std::floor(1.0 / code_rate_)));
}

bool FecCodec::rate_mismatch() const {
    return mode_ == FecMode::repetition && repetition_factor_ * code_rate_ != 1.0;
}

std::vector<std::uint8_t> FecCodec::encode(const std::vector<std::uint8_t>& bytes) const {
    if (mode_ != FecMode::repetition || repetition_factor_ == 1) return bytes;
    BitWriter writer;
    BitReader reader(bytes);
    for (std::size_t i = 0; i < bytes.size() * 8; ++i) {
        const bool bit = reader.read_bit();
        for (int r = 0; r < repetition_factor_; ++r) writer.put_bit(bit);
    }
    return writer.take_bytes();
}

FecDecodeResult FecCodec::decode(const std::vector<std::uint8_t>& bytes,
                                 std::mt19937_64& rng) const {
    FecDecodeResult result;
    if (mode_ == FecMode::ideal) {
        result.bytes = bytes;
        std::bernoulli_distribution failure(bler_target_);
        result.block_ok = !failure(rng);
        return result;
    }
    if (mode_ != FecMode::repetition || repetition_factor_ == 1) {
        result.bytes = bytes;
        return result;
    }
    const int r = repetition_factor_;
    const std::size_t out_bits = bytes.size() * 8 / r;
    BitReader reader(bytes);
    BitWriter writer;
    for (std::size_t i = 0; i < out_bits; ++i) {
        int votes = 0;
        for (int j = 0; j < r; ++j) votes += reader.read_bit() ? 1 : 0;
        writer.put_bit(2 * votes > r);  // even-r ties decode as 0
    }
    result.bytes = writer.take_bytes();
    return result;
}

}  // namespace toklink
