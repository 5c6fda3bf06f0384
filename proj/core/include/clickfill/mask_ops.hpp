#pragma once

#include "clickfill/image.hpp"

#include <optional>

namespace clickfill {

// Axis-aligned box in pixel coordinates, w and h >= 1.
struct BBox {
    int x0 = 0;
    int y0 = 0;
    int w = 1;
    int h = 1;

    int x1() const noexcept { return x0 + w; }  // exclusive
    int y1() const noexcept { return y0 + h; }  // exclusive
    friend bool operator==(const BBox&, const BBox&) = default;
};

// What pixels outside the raster count as during dilation.
enum class Border { Background, Foreground };

// Minkowski sum with the (2r+1)x(2r+1) square. Radius 0 is the identity.
Mask dilate(const Mask& mask, int radius, Border border = Border::Background);

// Erosion by the same square; out-of-bounds pixels count as background, so
// objects touching the border shrink away from it. Equal to
// invert(dilate(invert(m), r, Border::Foreground)).
Mask erode(const Mask& mask, int radius);

// Sets every background pixel not 4-connected to the image border.
Mask fill_holes(const Mask& mask);

Mask invert(const Mask& mask);

std::optional<BBox> bbox(const Mask& mask);

// fill_holes -> erode(open_radius) -> dilate(open_radius) -> dilate(dilate_radius).
// Throws EmptyResult when nothing survives.
Mask refine(const Mask& mask, int open_radius, int dilate_radius);

}  // namespace clickfill
