#include "clickfill/image.hpp"

#include "clickfill/error.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <string>

namespace clickfill {

namespace {

void check_extent(Extent e) {
    if (e.width <= 0 || e.height <= 0) {
        throw Error(ErrorCode::EmptyImage, "raster has zero pixels");
    }
    if (e.width > kMaxSide || e.height > kMaxSide) {
        throw Error(ErrorCode::DimensionTooLarge,
                    std::to_string(e.width) + "x" + std::to_string(e.height) + " exceeds " +
                        std::to_string(kMaxSide) + " per side");
    }
}

}  // namespace

Image::Image(Extent extent, Rgb fill) : extent_(extent) {
    check_extent(extent);
    pixels_.resize(extent.area() * 3);
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
        pixels_[i] = fill[0];
        pixels_[i + 1] = fill[1];
        pixels_[i + 2] = fill[2];
    }
}

Image::Image(Extent extent, std::vector<std::uint8_t> pixels)
    : extent_(extent), pixels_(std::move(pixels)) {
    check_extent(extent);
    if (pixels_.size() != extent.area() * 3) {
        throw Error(ErrorCode::ChannelMismatch,
                    "buffer holds " + std::to_string(pixels_.size()) + " bytes, expected " +
                        std::to_string(extent.area() * 3));
    }
}

Mask::Mask(Extent extent, bool value) : extent_(extent) {
    check_extent(extent);
    bits_.assign(extent.area(), value ? 1 : 0);
}

Mask::Mask(Extent extent, std::vector<std::uint8_t> bits) : extent_(extent), bits_(std::move(bits)) {
    check_extent(extent);
    if (bits_.size() != extent.area()) {
        throw Error(ErrorCode::DimensionMismatch, "mask buffer length does not match extent");
    }
    if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t v) { return v > 1; })) {
        throw Error(ErrorCode::BadMask, "mask values must be 0 or 1");
    }
}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool is_subset(const Mask& a, const Mask& b) {
    require_same_extent(a.extent(), b.extent(), "subset test");
    auto ab = a.bits();
    auto bb = b.bits();
    for (std::size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] && !bb[i]) return false;
    }
    return true;
}

void require_same_extent(Extent a, Extent b, const char* what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                        " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
    }
}

Image validate_image(Raster raster) {
    const Extent extent{raster.width, raster.height};
    check_extent(extent);
    if (raster.channels != 3 && raster.channels != 4) {
        throw Error(ErrorCode::ChannelMismatch,
                    "expected 3-channel RGB, got " + std::to_string(raster.channels) + " channels");
    }
    const std::size_t expected = extent.area() * std::size_t(raster.channels);
    if (raster.data.size() != expected) {
        throw Error(ErrorCode::ChannelMismatch,
                    "buffer holds " + std::to_string(raster.data.size()) + " bytes, expected " +
                        std::to_string(expected));
    }
    if (raster.channels == 3) {
        return Image(extent, std::move(raster.data));
    }

    spdlog::warn("dropping alpha channel from {}x{} input", raster.width, raster.height);
    std::vector<std::uint8_t> rgb(extent.area() * 3);
    for (std::size_t i = 0, j = 0; i < raster.data.size(); i += 4, j += 3) {
        rgb[j] = raster.data[i];
        rgb[j + 1] = raster.data[i + 1];
        rgb[j + 2] = raster.data[i + 2];
    }
    return Image(extent, std::move(rgb));
}

void ClickPrompt::validate(Extent extent) const {
    bool any_positive = false;
    for (const auto& p : points) {
        if (!extent.contains(p.x, p.y)) {
            throw Error(ErrorCode::PointOutOfBounds,
                        "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") outside " +
                            std::to_string(extent.width) + "x" + std::to_string(extent.height));
        }
        any_positive = any_positive || p.label == PointLabel::Positive;
    }
    if (!any_positive) {
        throw Error(ErrorCode::InvalidPrompt, "at least one positive point is required");
    }
}

}  // namespace clickfill
