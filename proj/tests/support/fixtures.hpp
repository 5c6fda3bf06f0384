#pragma once

#include "clickfill/codec.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

namespace clickfill::testing {

inline std::uint32_t crc32(const std::uint8_t* data, std::size_t n) {
    std::uint32_t c = 0xffffffffu;
    for (std::size_t i = 0; i < n; ++i) {
        c ^= data[i];
        for (int k = 0; k < 8; ++k) c = (c >> 1) ^ (0xedb88320u & (0u - (c & 1u)));
    }
    return c ^ 0xffffffffu;
}

// PNG signature plus a valid IHDR claiming width x height RGB8, no pixel
// data. Enough to exercise header-level dimension checks without
// allocating a huge raster.
inline Bytes png_header_only(std::uint32_t width, std::uint32_t height) {
    Bytes out{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    auto be32 = [&](std::uint32_t v) {
        for (int s = 24; s >= 0; s -= 8) out.push_back(std::uint8_t(v >> s));
    };
    be32(13);
    const std::size_t type_at = out.size();
    for (char ch : std::string("IHDR")) out.push_back(std::uint8_t(ch));
    be32(width);
    be32(height);
    for (std::uint8_t b : {8, 2, 0, 0, 0}) out.push_back(b);
    be32(crc32(out.data() + type_at, out.size() - type_at));
    return out;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("clickfill-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace clickfill::testing
