#pragma once

#include <cstdint>
#include <vector>

#include "pfan/tensor.hpp"

namespace pfan {

/// Side information for 8-bit min-max quantization of a channel group.
struct QuantParams {
    float min = 0.0f;
    float max = 0.0f;
    int bits = 8;

    bool operator==(const QuantParams&) const = default;
};

/// Quantized channels packed side by side into one 8-bit image so a standard
/// image codec can compress them. Tiles are laid out row-major; tiles past
/// `occupied` are zero filled.
struct Mosaic {
    int grid_rows = 0;
    int grid_cols = 0;
    int tile_height = 0;
    int tile_width = 0;
    int occupied = 0;
    std::vector<uint8_t> pixels;  // row-major, grid_rows*tile_height x grid_cols*tile_width

    int height() const { return grid_rows * tile_height; }
    int width() const { return grid_cols * tile_width; }

    bool operator==(const Mosaic&) const = default;
};

using ChannelCodes = std::vector<std::vector<uint8_t>>;

/// q = round((v - min) / (max - min) * 255), half away from zero; min/max are
/// taken over the whole group. A constant group (min == max) maps to all-zero
/// codes with the constant recorded in the params.
std::pair<ChannelCodes, QuantParams> quantize_group(const FeatureTensor& tensor,
                                                    const std::vector<int>& channels);

/// Per-channel variant: independent QuantParams for every listed channel.
std::pair<ChannelCodes, std::vector<QuantParams>> quantize_per_channel(
    const FeatureTensor& tensor, const std::vector<int>& channels);

/// v = min + q/255 * (max - min); a constant group returns the constant.
/// Reconstruction error is at most (max - min)/510 per element.
std::vector<std::vector<float>> dequantize_group(const ChannelCodes& codes,
                                                 const QuantParams& params);

std::vector<float> dequantize_channel(const std::vector<uint8_t>& codes,
                                      const QuantParams& params);

/// Packs channels row-major into the smallest near-square grid
/// (grid_cols = ceil(sqrt(n)), grid_rows = ceil(n / grid_cols)).
Mosaic tile(const ChannelCodes& codes, int tile_height, int tile_width);

/// Exact inverse of tile() for the first `occupied` channels.
ChannelCodes untile(const Mosaic& mosaic);

/// Grid geometry used by tile(), exposed so a decoder can derive mosaic
/// dimensions from a channel count alone.
std::pair<int, int> tile_grid(int channel_count);

}  // namespace pfan
