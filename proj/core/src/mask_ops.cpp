#include "clickfill/mask_ops.hpp"

#include "clickfill/error.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

namespace clickfill {

namespace {

void require_radius(int radius) {
    if (radius < 0) {
        throw Error(ErrorCode::InvalidConfig, "radius must be >= 0, got " + std::to_string(radius));
    }
}

// Sliding "any set in [i-r, i+r]" over one line of `n` samples spaced `stride` apart.
void dilate_line(const std::uint8_t* src, std::uint8_t* dst, int n, std::ptrdiff_t stride, int r,
                 bool foreground, std::vector<int>& prefix) {
    prefix.assign(std::size_t(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] + src[i * stride];
    }
    for (int i = 0; i < n; ++i) {
        const int lo = i - r;
        const int hi = i + r;
        bool hit = prefix[std::min(n, hi + 1)] - prefix[std::max(0, lo)] > 0;
        if (foreground && (lo < 0 || hi >= n)) hit = true;
        dst[i * stride] = hit ? 1 : 0;
    }
}

}  // namespace

Mask dilate(const Mask& mask, int radius, Border border) {
    require_radius(radius);
    if (radius == 0) return mask;

    const int w = mask.width();
    const int h = mask.height();
    const bool fg = border == Border::Foreground;
    std::vector<std::uint8_t> rows(mask.extent().area());
    std::vector<std::uint8_t> out(mask.extent().area());
    std::vector<int> prefix;
    const auto* src = mask.bits().data();

    for (int y = 0; y < h; ++y) {
        const std::size_t off = std::size_t(y) * w;
        dilate_line(src + off, rows.data() + off, w, 1, radius, fg, prefix);
    }
    for (int x = 0; x < w; ++x) {
        dilate_line(rows.data() + x, out.data() + x, h, w, radius, fg, prefix);
    }
    return Mask(mask.extent(), std::move(out));
}

Mask erode(const Mask& mask, int radius) {
    require_radius(radius);
    if (radius == 0) return mask;
    return invert(dilate(invert(mask), radius, Border::Foreground));
}

Mask fill_holes(const Mask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<std::uint8_t> outside(mask.extent().area(), 0);
    std::deque<std::pair<int, int>> queue;

    auto seed = [&](int x, int y) {
        const std::size_t i = std::size_t(y) * w + x;
        if (!mask.at(x, y) && !outside[i]) {
            outside[i] = 1;
            queue.emplace_back(x, y);
        }
    };
    for (int x = 0; x < w; ++x) {
        seed(x, 0);
        seed(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        seed(0, y);
        seed(w - 1, y);
    }

    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        if (x > 0) seed(x - 1, y);
        if (x + 1 < w) seed(x + 1, y);
        if (y > 0) seed(x, y - 1);
        if (y + 1 < h) seed(x, y + 1);
    }

    for (auto& v : outside) v = v ? 0 : 1;
    return Mask(mask.extent(), std::move(outside));
}

Mask invert(const Mask& mask) {
    std::vector<std::uint8_t> bits(mask.bits().begin(), mask.bits().end());
    for (auto& v : bits) v ^= 1;
    return Mask(mask.extent(), std::move(bits));
}

std::optional<BBox> bbox(const Mask& mask) {
    int x0 = mask.width(), y0 = mask.height(), x1 = -1, y1 = -1;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y)) continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x1 < 0) return std::nullopt;
    return BBox{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

Mask refine(const Mask& mask, int open_radius, int dilate_radius) {
    require_radius(open_radius);
    require_radius(dilate_radius);
    Mask out = dilate(dilate(erode(fill_holes(mask), open_radius), open_radius), dilate_radius);
    if (out.empty()) {
        throw Error(ErrorCode::EmptyResult, "refined mask has no set pixels");
    }
    return out;
}

}  // namespace clickfill
