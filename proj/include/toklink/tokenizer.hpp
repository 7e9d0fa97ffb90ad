#pragma once

#include <cstdint>
#include <vector>

#include "toklink/frame.hpp"

namespace toklink {

// Reserved zero-flag code: "value unknown", decoded as a zero coefficient.
inline constexpr std::uint32_t kZeroFlagToken = 0;

struct TokenizerConfig {
    int block_size = 8;
    int coeffs_per_block = 16;       // zigzag-order prefix kept per block
    int bits_per_token = 12;         // fixed value-code width
    std::vector<double> quant_steps; // per-subband, length coeffs_per_block; empty = defaults

    std::uint32_t vocab_size() const { return 1u << bits_per_token; }
    double quant_step(int subband) const;
    void validate() const;
};

// Importance-ordered token string for one frame. Position is importance:
// index 0 carries the most important token. Codes 1..2^b-1 are value codes,
// code 0 is the reserved zero flag (never produced by tokenize).
struct TokenSequence {
    std::vector<std::uint32_t> codes;

    std::size_t size() const { return codes.size(); }
    bool operator==(const TokenSequence&) const = default;
};

struct TokenizeStats {
    std::uint64_t saturated = 0;  // coefficients clamped into the code range
};

std::size_t token_count(FrameGeometry geometry, const TokenizerConfig& cfg);

// Block transform + mid-tread quantization, emitted subband-major: every
// block's zigzag coefficient 0 first (all channels), then coefficient 1, ...
TokenSequence tokenize(const Frame& frame, const TokenizerConfig& cfg,
                       TokenizeStats* stats = nullptr);

// Real-valued reconstruction (before rounding/clamping to 8-bit samples).
// Zero-flag tokens decode as zero coefficients.
std::vector<double> detokenize_values(const TokenSequence& tokens, FrameGeometry geometry,
                                      const TokenizerConfig& cfg);

Frame detokenize(const TokenSequence& tokens, FrameGeometry geometry,
                 const TokenizerConfig& cfg);

TokenSequence zero_state(std::size_t length);

// Mid-tread code mapping, shared with tests: level -> code and back.
std::uint32_t encode_level(long level, int bits_per_token, bool* saturated = nullptr);
long decode_level(std::uint32_t code, int bits_per_token);

// Zigzag scan: position -> row-major index within a block.
std::vector<int> zigzag_order(int block_size);

// Orthonormal block transform used by the tokenizer (separable DCT-II basis).
class BlockTransform {
public:
    explicit BlockTransform(int size);
    int size() const { return size_; }
    // spatial (row-major, size*size) -> coefficients (row-major)
    void forward(const double* block, double* coeffs) const;
    void inverse(const double* coeffs, double* block) const;
    // basis value of coefficient (row-major index k) at pixel (row-major index p)
    double basis(int k, int p) const;

private:
    int size_;
    std::vector<double> basis_;  // basis_[k*size + n]
};

}  // namespace toklink
