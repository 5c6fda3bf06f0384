#include "clickfill/codec.hpp"

#include "clickfill/error.hpp"

#include <png.h>
#include <sodium.h>

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

// jpeglib.h expects FILE and size_t to be declared first.
#include <jpeglib.h>

namespace clickfill {

namespace {

constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool is_png(std::span<const std::uint8_t> b) {
    return b.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), b.begin());
}

bool is_jpeg(std::span<const std::uint8_t> b) {
    return b.size() >= 3 && b[0] == 0xff && b[1] == 0xd8 && b[2] == 0xff;
}

void check_header_dims(std::uint32_t w, std::uint32_t h) {
    if (w > std::uint32_t(kMaxSide) || h > std::uint32_t(kMaxSide)) {
        throw Error(ErrorCode::DimensionTooLarge,
                    std::to_string(w) + "x" + std::to_string(h) + " exceeds " + std::to_string(kMaxSide) + " per side");
    }
    if (w == 0 || h == 0) {
        throw Error(ErrorCode::EmptyImage, "image has zero pixels");
    }
}

struct PngImage {
    png_image img;
    PngImage() {
        std::memset(&img, 0, sizeof img);
        img.version = PNG_IMAGE_VERSION;
    }
    ~PngImage() { png_image_free(&img); }
    PngImage(const PngImage&) = delete;
    PngImage& operator=(const PngImage&) = delete;
};

// `grey` requests single-channel output (mask decoding).
Raster read_png(std::span<const std::uint8_t> bytes, bool grey) {
    // IHDR is always the first chunk; check its size fields before libpng
    // walks the rest of the stream.
    if (bytes.size() >= 24 && std::memcmp(bytes.data() + 12, "IHDR", 4) == 0) {
        auto be32 = [&](std::size_t at) {
            return std::uint32_t(bytes[at]) << 24 | std::uint32_t(bytes[at + 1]) << 16 |
                   std::uint32_t(bytes[at + 2]) << 8 | std::uint32_t(bytes[at + 3]);
        };
        if (be32(16) > std::uint32_t(kMaxSide) || be32(20) > std::uint32_t(kMaxSide)) {
            check_header_dims(be32(16), be32(20));
        }
    }
    PngImage png;
    if (!png_image_begin_read_from_memory(&png.img, bytes.data(), bytes.size())) {
        throw Error(ErrorCode::DecodeError, std::string("PNG header: ") + png.img.message);
    }
    check_header_dims(png.img.width, png.img.height);

    int channels = 3;
    if (grey) {
        png.img.format = PNG_FORMAT_GRAY;
        channels = 1;
    } else if (png.img.format & PNG_FORMAT_FLAG_ALPHA) {
        png.img.format = PNG_FORMAT_RGBA;
        channels = 4;
    } else {
        png.img.format = PNG_FORMAT_RGB;
    }

    Raster r{int(png.img.width), int(png.img.height), channels, {}};
    r.data.resize(PNG_IMAGE_SIZE(png.img));
    if (!png_image_finish_read(&png.img, nullptr, r.data.data(), 0, nullptr)) {
        throw Error(ErrorCode::DecodeError, std::string("PNG data: ") + png.img.message);
    }
    return r;
}

Bytes write_png(const std::uint8_t* pixels, int width, int height, png_uint_32 format) {
    PngImage png;
    png.img.width = png_uint_32(width);
    png.img.height = png_uint_32(height);
    png.img.format = format;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&png.img, nullptr, &size, 0, pixels, 0, nullptr)) {
        throw Error(ErrorCode::DecodeError, std::string("PNG encode: ") + png.img.message);
    }
    Bytes out(size);
    if (!png_image_write_to_memory(&png.img, out.data(), &size, 0, pixels, 0, nullptr)) {
        throw Error(ErrorCode::DecodeError, std::string("PNG encode: ") + png.img.message);
    }
    out.resize(size);
    return out;
}

struct JpegErrors {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
    bool warned;
};

void jpeg_fail(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrors*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

// Corrupt-data warnings (e.g. premature end of file) are treated as failures.
void jpeg_message(j_common_ptr cinfo, int level) {
    auto* err = reinterpret_cast<JpegErrors*>(cinfo->err);
    if (level < 0 && !err->warned) {
        err->warned = true;
        (*cinfo->err->format_message)(cinfo, err->message);
    }
}

// Plain C-style body so longjmp never skips a destructor.
bool jpeg_decode_into(std::span<const std::uint8_t> bytes, Raster& out, JpegErrors& err, bool& too_large) {
    jpeg_decompress_struct cinfo;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_fail;
    err.mgr.emit_message = jpeg_message;
    err.warned = false;
    err.message[0] = '\0';
    too_large = false;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    if (cinfo.image_width > unsigned(kMaxSide) || cinfo.image_height > unsigned(kMaxSide)) {
        out.width = int(cinfo.image_width);
        out.height = int(cinfo.image_height);
        too_large = true;
        jpeg_destroy_decompress(&cinfo);
        return false;
    }
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    out.width = int(cinfo.output_width);
    out.height = int(cinfo.output_height);
    out.channels = 3;
    out.data.resize(std::size_t(out.width) * out.height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = out.data.data() + std::size_t(cinfo.output_scanline) * out.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return !err.warned;
}

Raster read_jpeg(std::span<const std::uint8_t> bytes) {
    Raster out;
    JpegErrors err;
    bool too_large = false;
    if (!jpeg_decode_into(bytes, out, err, too_large)) {
        if (too_large) check_header_dims(std::uint32_t(out.width), std::uint32_t(out.height));
        throw Error(ErrorCode::DecodeError, std::string("JPEG: ") + err.message);
    }
    return out;
}

bool jpeg_encode_into(const Image& image, int quality, unsigned char*& buffer, unsigned long& size,
                      JpegErrors& err) {
    jpeg_compress_struct cinfo;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_fail;
    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        return false;
    }
    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &buffer, &size);
    cinfo.image_width = JDIMENSION(image.width());
    cinfo.image_height = JDIMENSION(image.height());
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    const std::size_t stride = std::size_t(image.width()) * 3;
    while (cinfo.next_scanline < cinfo.image_height) {
        auto* row = const_cast<JSAMPLE*>(image.pixels().data() + cinfo.next_scanline * stride);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
    return true;
}

void ensure_sodium() {
    static const bool ready = sodium_init() >= 0;
    if (!ready) throw std::runtime_error("libsodium failed to initialise");
}

}  // namespace

Raster decode_raster(std::span<const std::uint8_t> bytes) {
    if (is_png(bytes)) return read_png(bytes, false);
    if (is_jpeg(bytes)) return read_jpeg(bytes);
    throw Error(ErrorCode::DecodeError, "not a PNG or JPEG stream");
}

Image decode_image(std::span<const std::uint8_t> bytes) { return validate_image(decode_raster(bytes)); }

Bytes encode_png(const Image& image) {
    return write_png(image.pixels().data(), image.width(), image.height(), PNG_FORMAT_RGB);
}

Bytes encode_jpeg(const Image& image, int quality) {
    unsigned char* buffer = nullptr;
    unsigned long size = 0;
    JpegErrors err;
    const bool ok = jpeg_encode_into(image, std::clamp(quality, 1, 100), buffer, size, err);
    Bytes out;
    if (ok) out.assign(buffer, buffer + size);
    std::free(buffer);
    if (!ok) throw Error(ErrorCode::DecodeError, std::string("JPEG encode: ") + err.message);
    return out;
}

Bytes encode_mask_png(const Mask& mask) {
    std::vector<std::uint8_t> grey(mask.bits().begin(), mask.bits().end());
    for (auto& v : grey) v = v ? 255 : 0;
    return write_png(grey.data(), mask.width(), mask.height(), PNG_FORMAT_GRAY);
}

Mask decode_mask_png(std::span<const std::uint8_t> bytes) {
    if (!is_png(bytes)) throw Error(ErrorCode::DecodeError, "mask must be a PNG stream");
    Raster r = read_png(bytes, true);
    for (auto& v : r.data) {
        if (v != 0 && v != 255) {
            throw Error(ErrorCode::BadMask, "mask values must be 0 or 255, found " + std::to_string(int(v)));
        }
        v = v ? 1 : 0;
    }
    return Mask(Extent{r.width, r.height}, std::move(r.data));
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    ensure_sodium();
    constexpr int variant = sodium_base64_VARIANT_ORIGINAL;
    std::string out(sodium_base64_encoded_len(bytes.size(), variant), '\0');
    sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), variant);
    out.resize(std::strlen(out.c_str()));
    return out;
}

Bytes base64_decode(std::string_view text) {
    ensure_sodium();
    Bytes out(text.size() / 4 * 3 + 3);
    std::size_t len = 0;
    const char* end = nullptr;
    if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), "\r\n", &len, &end,
                          sodium_base64_VARIANT_ORIGINAL) != 0 ||
        end != text.data() + text.size()) {
        throw Error(ErrorCode::DecodeError, "malformed base64");
    }
    out.resize(len);
    return out;
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::DecodeError, "cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

ImageFormat format_for(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return ext == ".jpg" || ext == ".jpeg" ? ImageFormat::Jpeg : ImageFormat::Png;
}

Image load_image(const std::filesystem::path& path) { return decode_image(read_file(path)); }

void save_image(const std::filesystem::path& path, const Image& image) {
    write_file(path, format_for(path) == ImageFormat::Jpeg ? encode_jpeg(image) : encode_png(image));
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    ensure_sodium();
    unsigned char digest[crypto_hash_sha256_BYTES];
    crypto_hash_sha256(digest, bytes.data(), bytes.size());
    char hex[crypto_hash_sha256_BYTES * 2 + 1];
    sodium_bin2hex(hex, sizeof hex, digest, sizeof digest);
    return hex;
}

}  // namespace clickfill
