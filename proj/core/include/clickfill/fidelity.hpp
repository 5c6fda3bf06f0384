#pragma once

#include "clickfill/config.hpp"
#include "clickfill/image.hpp"
#include "clickfill/mask_ops.hpp"

namespace clickfill {

struct Ratio {
    int num = 1;
    int den = 1;

    double value() const noexcept { return double(num) / double(den); }
    friend bool operator==(const Ratio&, const Ratio&) = default;
};

// Source window handed to a backend at a fixed working resolution.
// Scales are source pixels per working pixel.
struct CropWindow {
    int x0 = 0;
    int y0 = 0;
    int side_w = 0;
    int side_h = 0;
    int working_w = 0;
    int working_h = 0;

    Extent side() const noexcept { return {side_w, side_h}; }
    Extent working() const noexcept { return {working_w, working_h}; }
    Ratio scale_x() const noexcept;
    Ratio scale_y() const noexcept;
    // Scale along the window's long axis.
    Ratio scale() const noexcept;
    bool is_identity_scale() const noexcept { return side_w == working_w && side_h == working_h; }

    friend bool operator==(const CropWindow&, const CropWindow&) = default;
};

// Throws RegionOutOfBounds if the window does not fit in `image` or has a
// non-positive extent.
void validate_window(const CropWindow& window, Extent image);

// Square window of side L = max(S, ceil(max(w, h) * (1 + margin))) centred on
// `region` and shifted inside the image when L fits; otherwise the whole
// image, scaled so its long side is S with both sides floored to multiples of 8.
CropWindow compute_crop(Extent image, const BBox& region, const PipelineConfig& config);

// Crop + bilinear resample to the working size. Bit-exact copy at scale 1.
Image extract(const Image& image, const CropWindow& window);

// Same geometry as extract; resampled coverage >= 0.5 becomes 1.
Mask extract_mask(const Mask& mask, const CropWindow& window);

// Resamples `processed` back to the window size and writes it over
// `original` wherever `edit_mask` is set inside the window. Every other
// pixel is copied from `original` unchanged.
Image paste_composite(const Image& original, const Image& processed, const CropWindow& window,
                      const Mask& edit_mask);

}  // namespace clickfill
