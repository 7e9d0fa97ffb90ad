#include "toklink/tokenizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace toklink {

double TokenizerConfig::quant_step(int subband) const {
    if (!quant_steps.empty()) return quant_steps[subband];
    return subband == 0 ? 8.0 : 16.0;
}

void TokenizerConfig::validate() const {
    if (block_size < 1) throw std::invalid_argument("block_size must be >= 1");
    if (coeffs_per_block < 1 || coeffs_per_block > block_size * block_size)
        throw std::invalid_argument("coeffs_per_block must be in [1, block_size^2]");
    if (bits_per_token < 1 || bits_per_token > 20)
        throw std::invalid_argument("bits_per_token must be in [1, 20]");
    if (!quant_steps.empty()) {
        if (static_cast<int>(quant_steps.size()) != coeffs_per_block)
            throw std::invalid_argument("quant_steps length must equal coeffs_per_block");
        for (double q : quant_steps)
            if (!(q > 0.0)) throw std::invalid_argument("quant_steps must be positive");
    }
}

std::vector<int> zigzag_order(int block_size) {
    const int n = block_size;
    std::vector<int> order;
    order.reserve(n * n);
    for (int s = 0; s <= 2 * (n - 1); ++s) {
        const int lo = std::max(0, s - n + 1);
        const int hi = std::min(s, n - 1);
        if (s % 2 == 0) {
            for (int i = hi; i >= lo; --i) order.push_back(i * n + (s - i));
        } else {
            for (int i = lo; i <= hi; ++i) order.push_back(i * n + (s - i));
        }
    }
    return order;
}

BlockTransform::BlockTransform(int size) : size_(size), basis_(size * size) {
    const double norm0 = std::sqrt(1.0 / size);
    const double norm = std::sqrt(2.0 / size);
    for (int k = 0; k < size; ++k)
        for (int n = 0; n < size; ++n)
            basis_[k * size + n] = (k == 0 ? norm0 : norm) *
                                   std::cos(std::numbers::pi * (2 * n + 1) * k / (2.0 * size));
}

void BlockTransform::forward(const double* block, double* coeffs) const {
    const int n = size_;
    std::vector<double> tmp(n * n);
    // rows: tmp[y][k] = sum_x block[y][x] * A[k][x]
    for (int y = 0; y < n; ++y)
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int x = 0; x < n; ++x) acc += block[y * n + x] * basis_[k * n + x];
            tmp[y * n + k] = acc;
        }
    // cols: coeffs[l][k] = sum_y tmp[y][k] * A[l][y]
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int y = 0; y < n; ++y) acc += tmp[y * n + k] * basis_[l * n + y];
            coeffs[l * n + k] = acc;
        }
}

void BlockTransform::inverse(const double* coeffs, double* block) const {
    const int n = size_;
    std::vector<double> tmp(n * n);
    for (int y = 0; y < n; ++y)
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int l = 0; l < n; ++l) acc += coeffs[l * n + k] * basis_[l * n + y];
            tmp[y * n + k] = acc;
        }
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += tmp[y * n + k] * basis_[k * n + x];
            block[y * n + x] = acc;
        }
}

double BlockTransform::basis(int k, int p) const {
    const int n = size_;
    return basis_[(k / n) * n + (p / n)] * basis_[(k % n) * n + (p % n)];
}

std::uint32_t encode_level(long level, int bits_per_token, bool* saturated) {
    const long half = 1L << (bits_per_token - 1);
    const long max_level = half - 1;
    if (level > max_level) {
        if (saturated) *saturated = true;
        level = max_level;
    } else if (level < -max_level) {
        if (saturated) *saturated = true;
        level = -max_level;
    }
    return static_cast<std::uint32_t>(level + half);  // 1 .. 2^b - 1
}

long decode_level(std::uint32_t code, int bits_per_token) {
    const long half = 1L << (bits_per_token - 1);
    return static_cast<long>(code) - half;
}

namespace {

void check_geometry(FrameGeometry geometry, const TokenizerConfig& cfg) {
    cfg.validate();
    if (geometry.width < 1 || geometry.height < 1)
        throw std::invalid_argument("frame dimensions must be positive");
    if (geometry.channels != 1 && geometry.channels != 3)
        throw std::invalid_argument("channels must be 1 or 3");
    if (geometry.width % cfg.block_size != 0 || geometry.height % cfg.block_size != 0)
        throw std::invalid_argument("frame dimensions must be multiples of the block size");
}

}  // namespace

std::size_t token_count(FrameGeometry geometry, const TokenizerConfig& cfg) {
    check_geometry(geometry, cfg);
    const std::size_t blocks = static_cast<std::size_t>(geometry.width / cfg.block_size) *
                               (geometry.height / cfg.block_size);
    return blocks * geometry.channels * cfg.coeffs_per_block;
}

TokenSequence tokenize(const Frame& frame, const TokenizerConfig& cfg, TokenizeStats* stats) {
    check_geometry(frame.geometry, cfg);
    if (frame.samples.size() != frame.geometry.sample_count())
        throw std::invalid_argument("sample buffer does not match frame geometry");

    const int n = cfg.block_size;
    const int d = cfg.coeffs_per_block;
    const int channels = frame.channels();
    const int blocks_x = frame.width() / n;
    const int blocks_y = frame.height() / n;
    const std::size_t blocks = static_cast<std::size_t>(blocks_x) * blocks_y;
    const BlockTransform transform(n);
    const std::vector<int> zigzag = zigzag_order(n);

    // coeffs laid out subband-major so emission is a straight copy:
    // index = (subband * channels + channel) * blocks + block
    std::vector<double> block(n * n), coeffs(n * n);
    TokenSequence out;
    out.codes.assign(blocks * channels * d, 0);
    for (int c = 0; c < channels; ++c) {
        for (int by = 0; by < blocks_y; ++by) {
            for (int bx = 0; bx < blocks_x; ++bx) {
                for (int y = 0; y < n; ++y)
                    for (int x = 0; x < n; ++x) {
                        const std::size_t px =
                            (static_cast<std::size_t>(by * n + y) * frame.width() + bx * n + x) *
                                channels +
                            c;
                        block[y * n + x] = frame.samples[px];
                    }
                transform.forward(block.data(), coeffs.data());
                const std::size_t b = static_cast<std::size_t>(by) * blocks_x + bx;
                for (int s = 0; s < d; ++s) {
                    const double level_f = coeffs[zigzag[s]] / cfg.quant_step(s);
                    bool saturated = false;
                    const std::uint32_t code =
                        encode_level(std::lround(level_f), cfg.bits_per_token, &saturated);
                    if (saturated && stats) ++stats->saturated;
                    out.codes[(static_cast<std::size_t>(s) * channels + c) * blocks + b] = code;
                }
            }
        }
    }
    return out;
}

std::vector<double> detokenize_values(const TokenSequence& tokens, FrameGeometry geometry,
                                      const TokenizerConfig& cfg) {
    check_geometry(geometry, cfg);
    if (tokens.size() != token_count(geometry, cfg))
        throw std::invalid_argument("token count does not match frame geometry (" +
                                    std::to_string(tokens.size()) + " tokens)");

    const int n = cfg.block_size;
    const int d = cfg.coeffs_per_block;
    const int channels = geometry.channels;
    const int blocks_x = geometry.width / n;
    const int blocks_y = geometry.height / n;
    const std::size_t blocks = static_cast<std::size_t>(blocks_x) * blocks_y;
    const BlockTransform transform(n);
    const std::vector<int> zigzag = zigzag_order(n);

    std::vector<double> values(geometry.sample_count(), 0.0);
    std::vector<double> coeffs(n * n), block(n * n);
    for (int c = 0; c < channels; ++c) {
        for (int by = 0; by < blocks_y; ++by) {
            for (int bx = 0; bx < blocks_x; ++bx) {
                const std::size_t b = static_cast<std::size_t>(by) * blocks_x + bx;
                std::fill(coeffs.begin(), coeffs.end(), 0.0);
                for (int s = 0; s < d; ++s) {
                    const std::uint32_t code =
                        tokens.codes[(static_cast<std::size_t>(s) * channels + c) * blocks + b];
                    if (code == kZeroFlagToken) continue;  // missing value
                    coeffs[zigzag[s]] =
                        static_cast<double>(decode_level(code, cfg.bits_per_token)) *
                        cfg.quant_step(s);
                }
                transform.inverse(coeffs.data(), block.data());
                for (int y = 0; y < n; ++y)
                    for (int x = 0; x < n; ++x)
                        values[(static_cast<std::size_t>(by * n + y) * geometry.width + bx * n +
                                x) *
                                   channels +
                               c] = block[y * n + x];
            }
        }
    }
    return values;
}

Frame detokenize(const TokenSequence& tokens, FrameGeometry geometry,
                 const TokenizerConfig& cfg) {
    const std::vector<double> values = detokenize_values(tokens, geometry, cfg);
    Frame frame = make_frame(geometry);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = std::lround(values[i]);
        frame.samples[i] = static_cast<std::uint8_t>(v < 0.0 ? 0 : v > 255.0 ? 255 : v);
    }
    return frame;
}

TokenSequence zero_state(std::size_t length) {
    TokenSequence seq;
    seq.codes.assign(length, kZeroFlagToken);
    return seq;
}

}  // namespace toklink
