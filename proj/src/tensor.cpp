#include "pfan/tensor.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "pfan/errors.hpp"

namespace pfan {

namespace {

constexpr std::array<char, 4> kMagic = {'P', 'F', 'T', '1'};
constexpr uint8_t kVersion = 1;
constexpr uint8_t kDtypeFloat32 = 0;

void put_u16le(std::string& out, uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

uint16_t get_u16le(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

FeatureTensor parse_pft1(const std::string& bytes, const std::string& origin) {
    if (bytes.size() < 12) throw FormatError(origin + ": file too short for PFT1 header");
    if (std::memcmp(bytes.data(), kMagic.data(), 4) != 0)
        throw FormatError(origin + ": bad magic, expected PFT1");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (p[4] != kVersion)
        throw FormatError(origin + ": unsupported PFT1 version " + std::to_string(p[4]));
    if (p[5] != kDtypeFloat32)
        throw FormatError(origin + ": unsupported dtype " + std::to_string(p[5]));
    const int h = get_u16le(p + 6);
    const int w = get_u16le(p + 8);
    const int c = get_u16le(p + 10);
    if (h == 0 || w == 0 || c == 0)
        throw FormatError(origin + ": zero dimension in header");
    const size_t count = static_cast<size_t>(h) * w * c;
    if (bytes.size() != 12 + count * 4)
        throw FormatError(origin + ": payload length mismatch, expected " +
                          std::to_string(count * 4) + " bytes, got " +
                          std::to_string(bytes.size() - 12));

    FeatureTensor t(h, w, c);
    for (size_t i = 0; i < count; ++i) {
        uint32_t u = static_cast<uint32_t>(p[12 + 4 * i]) |
                     static_cast<uint32_t>(p[13 + 4 * i]) << 8 |
                     static_cast<uint32_t>(p[14 + 4 * i]) << 16 |
                     static_cast<uint32_t>(p[15 + 4 * i]) << 24;
        t.data[i] = std::bit_cast<float>(u);
    }
    validate(t);
    return t;
}

std::string serialize_pft1(const FeatureTensor& t) {
    std::string out;
    out.reserve(12 + t.size() * 4);
    out.append(kMagic.data(), 4);
    out.push_back(static_cast<char>(kVersion));
    out.push_back(static_cast<char>(kDtypeFloat32));
    put_u16le(out, static_cast<uint16_t>(t.height));
    put_u16le(out, static_cast<uint16_t>(t.width));
    put_u16le(out, static_cast<uint16_t>(t.channels));
    for (float f : t.data) {
        uint32_t u = std::bit_cast<uint32_t>(f);
        out.push_back(static_cast<char>(u & 0xff));
        out.push_back(static_cast<char>((u >> 8) & 0xff));
        out.push_back(static_cast<char>((u >> 16) & 0xff));
        out.push_back(static_cast<char>((u >> 24) & 0xff));
    }
    return out;
}

}  // namespace

void validate(const FeatureTensor& t) {
    if (t.height <= 0 || t.width <= 0 || t.channels <= 0)
        throw ValidationError("tensor dimensions must be positive");
    if (t.data.size() != t.size())
        throw ValidationError("tensor data length does not match dimensions");
    for (float v : t.data)
        if (!std::isfinite(v)) throw ValidationError("tensor contains non-finite values");
}

void validate(const Image& img) {
    if (img.height <= 0 || img.width <= 0)
        throw ValidationError("image dimensions must be positive");
    if (img.planes != 1 && img.planes != 3)
        throw ValidationError("image planes must be 1 or 3");
    if (img.data.size() != img.size())
        throw ValidationError("image data length does not match dimensions");
    for (float v : img.data)
        if (!(v >= 0.0f && v <= 1.0f))
            throw ValidationError("image values must lie in [0, 1]");
}

FeatureTensor load_tensor(const std::filesystem::path& path) {
    return parse_pft1(read_file(path), path.string());
}

void save_tensor(const FeatureTensor& tensor, const std::filesystem::path& path) {
    validate(tensor);
    if (tensor.height > 0xffff || tensor.width > 0xffff || tensor.channels > 0xffff)
        throw ValidationError("tensor dimension exceeds u16 header field");
    write_file(path, serialize_pft1(tensor));
}

Image load_image(const std::filesystem::path& path) {
    FeatureTensor t = parse_pft1(read_file(path), path.string());
    if (t.channels != 1 && t.channels != 3)
        throw FormatError(path.string() + ": image file must have 1 or 3 planes");
    Image img(t.height, t.width, t.channels);
    img.data = std::move(t.data);
    validate(img);
    return img;
}

void save_image(const Image& img, const std::filesystem::path& path) {
    validate(img);
    FeatureTensor t(img.height, img.width, img.planes);
    t.data = img.data;
    save_tensor(t, path);
}

FeatureTensor load_npy_tensor(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    const std::string origin = path.string();
    static const char npy_magic[] = "\x93NUMPY";
    if (bytes.size() < 10 || std::memcmp(bytes.data(), npy_magic, 6) != 0)
        throw FormatError(origin + ": not a .npy file");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (p[6] != 1 || p[7] != 0)
        throw FormatError(origin + ": only .npy version 1.0 is supported");
    const size_t header_len = get_u16le(p + 8);
    if (bytes.size() < 10 + header_len)
        throw FormatError(origin + ": truncated .npy header");
    const std::string header = bytes.substr(10, header_len);

    if (header.find("'<f4'") == std::string::npos)
        throw FormatError(origin + ": dtype must be little-endian float32 ('<f4')");
    if (header.find("'fortran_order': False") == std::string::npos)
        throw FormatError(origin + ": fortran_order arrays are not supported");

    const size_t sp = header.find("'shape':");
    if (sp == std::string::npos) throw FormatError(origin + ": missing shape in header");
    const size_t open = header.find('(', sp);
    const size_t close = header.find(')', open);
    if (open == std::string::npos || close == std::string::npos)
        throw FormatError(origin + ": malformed shape tuple");
    std::vector<long> dims;
    long cur = -1;
    for (size_t i = open + 1; i < close; ++i) {
        char ch = header[i];
        if (ch >= '0' && ch <= '9') cur = (cur < 0 ? 0 : cur) * 10 + (ch - '0');
        else if (ch == ',') { if (cur >= 0) dims.push_back(cur); cur = -1; }
        else if (ch != ' ') throw FormatError(origin + ": malformed shape tuple");
    }
    if (cur >= 0) dims.push_back(cur);
    if (dims.size() != 3)
        throw FormatError(origin + ": expected rank-3 array (channels, height, width), got rank " +
                          std::to_string(dims.size()));
    const long c = dims[0], h = dims[1], w = dims[2];
    if (c <= 0 || h <= 0 || w <= 0)
        throw FormatError(origin + ": zero-sized dimension");

    const size_t count = static_cast<size_t>(c) * h * w;
    const size_t payload_off = 10 + header_len;
    if (bytes.size() - payload_off != count * 4)
        throw FormatError(origin + ": payload length mismatch");

    // (channels, height, width) C-order matches the channel-major layout directly.
    FeatureTensor t(static_cast<int>(h), static_cast<int>(w), static_cast<int>(c));
    const auto* q = p + payload_off;
    for (size_t i = 0; i < count; ++i) {
        uint32_t u = static_cast<uint32_t>(q[4 * i]) |
                     static_cast<uint32_t>(q[4 * i + 1]) << 8 |
                     static_cast<uint32_t>(q[4 * i + 2]) << 16 |
                     static_cast<uint32_t>(q[4 * i + 3]) << 24;
        t.data[i] = std::bit_cast<float>(u);
    }
    validate(t);
    return t;
}

FeatureTensor zero_channel(const FeatureTensor& tensor, int i) {
    if (i < 0 || i >= tensor.channels)
        throw std::out_of_range("zero_channel: channel index " + std::to_string(i) +
                                " out of range [0, " + std::to_string(tensor.channels) + ")");
    FeatureTensor out = tensor;
    auto ch = out.channel(i);
    std::fill(ch.begin(), ch.end(), 0.0f);
    return out;
}

}  // namespace pfan
