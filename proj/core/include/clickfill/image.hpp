#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace clickfill {

// Largest accepted side length. Covers 2K-class photos with headroom.
inline constexpr int kMaxSide = 4096;

// Origin at the top-left corner, x grows rightward, y grows downward.
struct Extent {
    int width = 0;
    int height = 0;

    std::size_t area() const noexcept { return std::size_t(width) * std::size_t(height); }
    bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width && y < height; }
    friend bool operator==(const Extent&, const Extent&) = default;
};

using Rgb = std::array<std::uint8_t, 3>;

// 8-bit RGB raster, row-major, 3 interleaved channels.
class Image {
public:
    // Filled with `fill`. Throws EmptyImage / DimensionTooLarge.
    explicit Image(Extent extent, Rgb fill = {0, 0, 0});
    // Takes ownership of a packed buffer; length must equal width*height*3.
    Image(Extent extent, std::vector<std::uint8_t> pixels);

    Extent extent() const noexcept { return extent_; }
    int width() const noexcept { return extent_.width; }
    int height() const noexcept { return extent_.height; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }

    Rgb at(int x, int y) const noexcept {
        const auto* p = &pixels_[index(x, y)];
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) noexcept {
        auto* p = &pixels_[index(x, y)];
        p[0] = c[0];
        p[1] = c[1];
        p[2] = c[2];
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return (std::size_t(y) * std::size_t(extent_.width) + std::size_t(x)) * 3;
    }

    Extent extent_;
    std::vector<std::uint8_t> pixels_;
};

// Binary raster aligned 1:1 with an Image. 1 = object / edit region.
class Mask {
public:
    explicit Mask(Extent extent, bool value = false);
    // Values must be 0 or 1; anything else throws BadMask.
    Mask(Extent extent, std::vector<std::uint8_t> bits);

    Extent extent() const noexcept { return extent_; }
    int width() const noexcept { return extent_.width; }
    int height() const noexcept { return extent_.height; }

    bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool v) noexcept { bits_[index(x, y)] = v ? 1 : 0; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return std::size_t(y) * std::size_t(extent_.width) + std::size_t(x);
    }

    Extent extent_;
    std::vector<std::uint8_t> bits_;
};

// True iff every set pixel of `a` is set in `b`. Dimensions must agree.
bool is_subset(const Mask& a, const Mask& b);

// Throws DimensionMismatch naming `what` when extents differ.
void require_same_extent(Extent a, Extent b, const char* what);

// Decoded raster straight from a codec, before ingestion checks.
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;
};

// Ingestion gate. Four-channel rasters have alpha dropped (logged as a
// warning); any other channel count is ChannelMismatch.
Image validate_image(Raster raster);

enum class PointLabel { Negative = 0, Positive = 1 };

struct ClickPoint {
    int x = 0;
    int y = 0;
    PointLabel label = PointLabel::Positive;

    friend bool operator==(const ClickPoint&, const ClickPoint&) = default;
};

struct ClickPrompt {
    std::vector<ClickPoint> points;

    // Throws PointOutOfBounds for any point outside `extent`, InvalidPrompt
    // when no positive point is present.
    void validate(Extent extent) const;
};

}  // namespace clickfill
