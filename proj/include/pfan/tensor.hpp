#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pfan {

/// Latent feature tensor produced by an edge encoder. Storage is
/// channel-major outermost so each channel is one contiguous slice:
/// data[(c*height + y)*width + x].
struct FeatureTensor {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<float> data;

    FeatureTensor() = default;
    FeatureTensor(int h, int w, int c)
        : height(h), width(w), channels(c),
          data(static_cast<size_t>(h) * w * c, 0.0f) {}

    size_t plane_size() const { return static_cast<size_t>(height) * width; }
    size_t size() const { return plane_size() * channels; }

    float& at(int c, int y, int x) {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }

    std::span<const float> channel(int c) const {
        return {data.data() + static_cast<size_t>(c) * plane_size(), plane_size()};
    }
    std::span<float> channel(int c) {
        return {data.data() + static_cast<size_t>(c) * plane_size(), plane_size()};
    }

    bool operator==(const FeatureTensor&) const = default;
};

/// Grayscale or RGB image, planar layout, float values in [0, 1].
struct Image {
    int height = 0;
    int width = 0;
    int planes = 1;
    std::vector<float> data;

    Image() = default;
    Image(int h, int w, int p = 1)
        : height(h), width(w), planes(p),
          data(static_cast<size_t>(h) * w * p, 0.0f) {}

    size_t plane_size() const { return static_cast<size_t>(height) * width; }
    size_t size() const { return plane_size() * planes; }

    float& at(int y, int x, int p = 0) {
        return data[(static_cast<size_t>(p) * height + y) * width + x];
    }
    float at(int y, int x, int p = 0) const {
        return data[(static_cast<size_t>(p) * height + y) * width + x];
    }

    bool operator==(const Image&) const = default;
};

/// Per-pixel ground truth for the two non-private tasks: a segmentation map
/// with class ids in [0, num_classes) plus a reserved ignore id, and a
/// disparity map (>= 0, with 0 meaning "no valid disparity").
struct TaskLabels {
    int height = 0;
    int width = 0;
    int num_classes = 0;
    int32_t ignore_id = 255;
    std::vector<int32_t> segmentation;
    std::vector<float> disparity;

    TaskLabels() = default;
    TaskLabels(int h, int w, int k, int32_t ignore = 255)
        : height(h), width(w), num_classes(k), ignore_id(ignore),
          segmentation(static_cast<size_t>(h) * w, 0),
          disparity(static_cast<size_t>(h) * w, 0.0f) {}

    int32_t seg_at(int y, int x) const {
        return segmentation[static_cast<size_t>(y) * width + x];
    }
    float disp_at(int y, int x) const {
        return disparity[static_cast<size_t>(y) * width + x];
    }
};

/// Throws ValidationError if dimensions/data length disagree or any value is
/// non-finite.
void validate(const FeatureTensor& t);
void validate(const Image& img);

// --- PFT1 binary array format -----------------------------------------------
//
// magic "PFT1" | version u8 (=1) | dtype u8 (=0, float32)
// | height u16 | width u16 | channels u16 | payload float32 LE
//
// Round-trip is bit-exact for all finite float32 payloads.

FeatureTensor load_tensor(const std::filesystem::path& path);
void save_tensor(const FeatureTensor& tensor, const std::filesystem::path& path);

/// Images reuse the same container with channels = planes.
Image load_image(const std::filesystem::path& path);
void save_image(const Image& img, const std::filesystem::path& path);

/// Importer for ".npy" v1.0 files holding a float32 C-order array of rank 3,
/// interpreted as (channels, height, width).
FeatureTensor load_npy_tensor(const std::filesystem::path& path);

// --- Channel manipulation ----------------------------------------------------

/// Returns a copy with channel i zeroed; every other channel unchanged.
FeatureTensor zero_channel(const FeatureTensor& tensor, int i);

}  // namespace pfan
