#include "clickfill/fidelity.hpp"

#include "clickfill/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace clickfill {

namespace {

Ratio make_ratio(int num, int den) {
    const int g = std::gcd(num, den);
    return {num / g, den / g};
}

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Per-output-sample source taps for pixel-centre aligned bilinear sampling.
struct Taps {
    std::vector<int> i0;
    std::vector<int> i1;
    std::vector<double> t;
};

Taps make_taps(int n_in, int n_out) {
    Taps taps;
    taps.i0.resize(n_out);
    taps.i1.resize(n_out);
    taps.t.resize(n_out);
    const double ratio = double(n_in) / double(n_out);
    for (int d = 0; d < n_out; ++d) {
        double s = (d + 0.5) * ratio - 0.5;
        s = std::clamp(s, 0.0, double(n_in - 1));
        const int lo = static_cast<int>(std::floor(s));
        taps.i0[d] = lo;
        taps.i1[d] = std::min(lo + 1, n_in - 1);
        taps.t[d] = s - lo;
    }
    return taps;
}

// Resamples the `channels`-interleaved sub-rectangle (x0, y0, sw, sh) of a
// raster of row width `src_w` to (out_w, out_h); `emit` receives each
// interpolated sample.
template <typename Emit>
void resample(const std::uint8_t* src, int src_w, int channels, int x0, int y0, int sw, int sh,
              int out_w, int out_h, Emit&& emit) {
    const Taps tx = make_taps(sw, out_w);
    const Taps ty = make_taps(sh, out_h);
    auto sample = [&](int x, int y, int c) {
        return double(src[(std::size_t(y0 + y) * src_w + std::size_t(x0 + x)) * channels + c]);
    };
    for (int y = 0; y < out_h; ++y) {
        const double wy = ty.t[y];
        for (int x = 0; x < out_w; ++x) {
            const double wx = tx.t[x];
            for (int c = 0; c < channels; ++c) {
                const double top = (1.0 - wx) * sample(tx.i0[x], ty.i0[y], c) + wx * sample(tx.i1[x], ty.i0[y], c);
                const double bot = (1.0 - wx) * sample(tx.i0[x], ty.i1[y], c) + wx * sample(tx.i1[x], ty.i1[y], c);
                emit(x, y, c, (1.0 - wy) * top + wy * bot);
            }
        }
    }
}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
}

Image resample_image(const Image& src, int x0, int y0, int sw, int sh, int out_w, int out_h) {
    if (sw == out_w && sh == out_h) {
        Image out(Extent{out_w, out_h});
        for (int y = 0; y < sh; ++y) {
            for (int x = 0; x < sw; ++x) out.set(x, y, src.at(x0 + x, y0 + y));
        }
        return out;
    }
    std::vector<std::uint8_t> buf(std::size_t(out_w) * out_h * 3);
    resample(src.pixels().data(), src.width(), 3, x0, y0, sw, sh, out_w, out_h,
             [&](int x, int y, int c, double v) { buf[(std::size_t(y) * out_w + x) * 3 + c] = to_byte(v); });
    return Image(Extent{out_w, out_h}, std::move(buf));
}

}  // namespace

Ratio CropWindow::scale_x() const noexcept { return make_ratio(side_w, working_w); }
Ratio CropWindow::scale_y() const noexcept { return make_ratio(side_h, working_h); }
Ratio CropWindow::scale() const noexcept { return side_w >= side_h ? scale_x() : scale_y(); }

void validate_window(const CropWindow& window, Extent image) {
    const bool ok = window.side_w > 0 && window.side_h > 0 && window.working_w > 0 && window.working_h > 0 &&
                    window.x0 >= 0 && window.y0 >= 0 && window.x0 + window.side_w <= image.width &&
                    window.y0 + window.side_h <= image.height;
    if (!ok) {
        throw Error(ErrorCode::RegionOutOfBounds, "crop window does not fit the image");
    }
}

CropWindow compute_crop(Extent image, const BBox& region, const PipelineConfig& config) {
    config.validate();
    if (region.w < 1 || region.h < 1 || region.x0 < 0 || region.y0 < 0 || region.x1() > image.width ||
        region.y1() > image.height) {
        throw Error(ErrorCode::RegionOutOfBounds, "region (" + std::to_string(region.x0) + ", " +
                                                      std::to_string(region.y0) + ", " + std::to_string(region.w) +
                                                      ", " + std::to_string(region.h) + ") outside image");
    }

    const int s = config.working_resolution;
    const double grown = std::max(region.w, region.h) * (1.0 + config.crop_margin);
    const double needed = std::ceil(grown - 1e-9);
    const int side = needed >= double(kMaxSide * 2) ? kMaxSide * 2 : std::max(s, static_cast<int>(needed));

    CropWindow win;
    if (side <= std::min(image.width, image.height)) {
        win.side_w = win.side_h = side;
        win.x0 = std::clamp(region.x0 + floor_div(region.w - side, 2), 0, image.width - side);
        win.y0 = std::clamp(region.y0 + floor_div(region.h - side, 2), 0, image.height - side);
        win.working_w = win.working_h = s;
        return win;
    }

    const int long_side = std::max(image.width, image.height);
    auto working = [&](int n) {
        const long scaled = long(n) * s / long_side;
        return std::max(8, static_cast<int>(scaled / 8 * 8));
    };
    win.side_w = image.width;
    win.side_h = image.height;
    win.working_w = working(image.width);
    win.working_h = working(image.height);
    return win;
}

Image extract(const Image& image, const CropWindow& window) {
    validate_window(window, image.extent());
    return resample_image(image, window.x0, window.y0, window.side_w, window.side_h, window.working_w,
                          window.working_h);
}

Mask extract_mask(const Mask& mask, const CropWindow& window) {
    validate_window(window, mask.extent());
    const int ow = window.working_w;
    const int oh = window.working_h;
    std::vector<std::uint8_t> bits(std::size_t(ow) * oh);
    resample(mask.bits().data(), mask.width(), 1, window.x0, window.y0, window.side_w, window.side_h, ow, oh,
             [&](int x, int y, int, double v) { bits[std::size_t(y) * ow + x] = v >= 0.5 ? 1 : 0; });
    return Mask(Extent{ow, oh}, std::move(bits));
}

Image paste_composite(const Image& original, const Image& processed, const CropWindow& window,
                      const Mask& edit_mask) {
    validate_window(window, original.extent());
    require_same_extent(processed.extent(), window.working(), "processed patch vs working size");
    require_same_extent(edit_mask.extent(), original.extent(), "edit mask vs image");

    const Image patch = resample_image(processed, 0, 0, window.working_w, window.working_h, window.side_w,
                                       window.side_h);
    Image out = original;
    for (int y = 0; y < window.side_h; ++y) {
        for (int x = 0; x < window.side_w; ++x) {
            const int sx = window.x0 + x;
            const int sy = window.y0 + y;
            if (edit_mask.at(sx, sy)) out.set(sx, sy, patch.at(x, y));
        }
    }
    return out;
}

}  // namespace clickfill
