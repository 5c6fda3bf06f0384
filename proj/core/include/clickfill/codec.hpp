#pragma once

#include "clickfill/image.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clickfill {

using Bytes = std::vector<std::uint8_t>;

enum class ImageFormat { Png, Jpeg };

// Sniffs PNG / JPEG by magic bytes. Throws DecodeError for anything else, for
// corrupt or truncated data, and DimensionTooLarge before allocating pixels
// for oversized inputs. The raster keeps its alpha channel if present.
Raster decode_raster(std::span<const std::uint8_t> bytes);

// decode_raster followed by validate_image.
Image decode_image(std::span<const std::uint8_t> bytes);

Bytes encode_png(const Image& image);
Bytes encode_jpeg(const Image& image, int quality = 95);

// Single-channel PNG, 0 = background, 255 = object.
Bytes encode_mask_png(const Mask& mask);

// Accepts any PNG colour type (converted to grey); every value must be 0 or
// 255, otherwise BadMask. Corrupt data is DecodeError.
Mask decode_mask_png(std::span<const std::uint8_t> bytes);

std::string base64_encode(std::span<const std::uint8_t> bytes);
// Throws DecodeError on malformed input.
Bytes base64_decode(std::string_view text);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// Format picked from the extension: .jpg / .jpeg write JPEG, anything else PNG.
ImageFormat format_for(const std::filesystem::path& path);
Image load_image(const std::filesystem::path& path);
void save_image(const std::filesystem::path& path, const Image& image);

// Lowercase hex SHA-256, used for content-addressed storage.
std::string sha256_hex(std::span<const std::uint8_t> bytes);

}  // namespace clickfill
