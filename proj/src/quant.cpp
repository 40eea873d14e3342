#include "pfan/quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "pfan/errors.hpp"

namespace pfan {

namespace {

void check_channel_list(const FeatureTensor& tensor, const std::vector<int>& channels) {
    if (channels.empty())
        throw std::invalid_argument("quantize: channel list must be non-empty");
    std::set<int> seen;
    for (int c : channels) {
        if (c < 0 || c >= tensor.channels)
            throw std::invalid_argument("quantize: channel index " + std::to_string(c) +
                                        " out of range");
        if (!seen.insert(c).second)
            throw std::invalid_argument("quantize: duplicate channel index " + std::to_string(c));
    }
}

uint8_t encode_value(float v, float mn, float mx) {
    const double scale = static_cast<double>(mx) - static_cast<double>(mn);
    long q = std::lround((static_cast<double>(v) - mn) / scale * 255.0);
    return static_cast<uint8_t>(std::clamp(q, 0L, 255L));
}

std::vector<uint8_t> encode_channel(std::span<const float> values, float mn, float mx) {
    std::vector<uint8_t> codes(values.size());
    if (mn == mx) return codes;  // degenerate group: all codes 0
    for (size_t i = 0; i < values.size(); ++i) codes[i] = encode_value(values[i], mn, mx);
    return codes;
}

}  // namespace

std::pair<ChannelCodes, QuantParams> quantize_group(const FeatureTensor& tensor,
                                                    const std::vector<int>& channels) {
    check_channel_list(tensor, channels);
    float mn = std::numeric_limits<float>::infinity();
    float mx = -std::numeric_limits<float>::infinity();
    for (int c : channels)
        for (float v : tensor.channel(c)) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    ChannelCodes codes;
    codes.reserve(channels.size());
    for (int c : channels) codes.push_back(encode_channel(tensor.channel(c), mn, mx));
    return {std::move(codes), QuantParams{mn, mx, 8}};
}

std::pair<ChannelCodes, std::vector<QuantParams>> quantize_per_channel(
    const FeatureTensor& tensor, const std::vector<int>& channels) {
    check_channel_list(tensor, channels);
    ChannelCodes codes;
    std::vector<QuantParams> params;
    codes.reserve(channels.size());
    params.reserve(channels.size());
    for (int c : channels) {
        auto values = tensor.channel(c);
        auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
        codes.push_back(encode_channel(values, *mn_it, *mx_it));
        params.push_back(QuantParams{*mn_it, *mx_it, 8});
    }
    return {std::move(codes), std::move(params)};
}

std::vector<float> dequantize_channel(const std::vector<uint8_t>& codes,
                                      const QuantParams& params) {
    if (params.bits != 8) throw std::invalid_argument("dequantize: bits must be 8");
    if (!(params.min <= params.max))
        throw std::invalid_argument("dequantize: min must not exceed max");
    std::vector<float> values(codes.size());
    if (params.min == params.max) {
        std::fill(values.begin(), values.end(), params.min);
        return values;
    }
    const double mn = params.min;
    const double scale = static_cast<double>(params.max) - mn;
    for (size_t i = 0; i < codes.size(); ++i)
        values[i] = static_cast<float>(mn + codes[i] / 255.0 * scale);
    return values;
}

std::vector<std::vector<float>> dequantize_group(const ChannelCodes& codes,
                                                 const QuantParams& params) {
    std::vector<std::vector<float>> out;
    out.reserve(codes.size());
    for (const auto& ch : codes) out.push_back(dequantize_channel(ch, params));
    return out;
}

std::pair<int, int> tile_grid(int channel_count) {
    if (channel_count <= 0) throw std::invalid_argument("tile_grid: need at least one channel");
    int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(channel_count))));
    int rows = (channel_count + cols - 1) / cols;
    return {rows, cols};
}

Mosaic tile(const ChannelCodes& codes, int tile_height, int tile_width) {
    if (codes.empty()) throw std::invalid_argument("tile: need at least one channel");
    if (tile_height <= 0 || tile_width <= 0)
        throw std::invalid_argument("tile: tile dimensions must be positive");
    const size_t plane = static_cast<size_t>(tile_height) * tile_width;
    for (const auto& ch : codes)
        if (ch.size() != plane)
            throw std::invalid_argument("tile: all channels must match the tile dimensions");

    auto [rows, cols] = tile_grid(static_cast<int>(codes.size()));
    Mosaic m;
    m.grid_rows = rows;
    m.grid_cols = cols;
    m.tile_height = tile_height;
    m.tile_width = tile_width;
    m.occupied = static_cast<int>(codes.size());
    m.pixels.assign(static_cast<size_t>(m.height()) * m.width(), 0);

    for (size_t n = 0; n < codes.size(); ++n) {
        const int gy = static_cast<int>(n) / cols;
        const int gx = static_cast<int>(n) % cols;
        for (int y = 0; y < tile_height; ++y) {
            const size_t dst = (static_cast<size_t>(gy) * tile_height + y) * m.width() +
                               static_cast<size_t>(gx) * tile_width;
            std::copy_n(codes[n].data() + static_cast<size_t>(y) * tile_width, tile_width,
                        m.pixels.data() + dst);
        }
    }
    return m;
}

ChannelCodes untile(const Mosaic& m) {
    if (m.grid_rows <= 0 || m.grid_cols <= 0 || m.tile_height <= 0 || m.tile_width <= 0)
        throw FormatError("untile: mosaic has non-positive dimensions");
    if (m.occupied < 0 || m.occupied > m.grid_rows * m.grid_cols)
        throw FormatError("untile: occupied count inconsistent with grid");
    if (m.pixels.size() != static_cast<size_t>(m.height()) * m.width())
        throw FormatError("untile: pixel buffer does not match mosaic dimensions");

    ChannelCodes codes(m.occupied);
    for (int n = 0; n < m.occupied; ++n) {
        const int gy = n / m.grid_cols;
        const int gx = n % m.grid_cols;
        codes[n].resize(static_cast<size_t>(m.tile_height) * m.tile_width);
        for (int y = 0; y < m.tile_height; ++y) {
            const size_t src = (static_cast<size_t>(gy) * m.tile_height + y) * m.width() +
                               static_cast<size_t>(gx) * m.tile_width;
            std::copy_n(m.pixels.data() + src, m.tile_width,
                        codes[n].data() + static_cast<size_t>(y) * m.tile_width);
        }
    }
    return codes;
}

}  // namespace pfan
