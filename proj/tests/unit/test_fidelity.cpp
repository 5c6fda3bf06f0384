#include "clickfill/error.hpp"
#include "clickfill/fidelity.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace clickfill;
using namespace clickfill::testing;

namespace {

PipelineConfig with_resolution(int s, double margin = 0.25) {
    PipelineConfig c;
    c.working_resolution = s;
    c.crop_margin = margin;
    return c;
}

// Independent bilinear reference: direct formula per output pixel, edge clamped.
double bilinear_ref(const Image& img, int x0, int y0, int sw, int sh, int ow, int oh, int ox, int oy, int c) {
    auto coord = [](int d, int n_in, int n_out) {
        const double s = (d + 0.5) * n_in / n_out - 0.5;
        return std::min(std::max(s, 0.0), double(n_in - 1));
    };
    const double sx = coord(ox, sw, ow), sy = coord(oy, sh, oh);
    const int ax = int(sx), ay = int(sy);
    const int bx = std::min(ax + 1, sw - 1), by = std::min(ay + 1, sh - 1);
    const double fx = sx - ax, fy = sy - ay;
    auto v = [&](int x, int y) { return double(img.at(x0 + x, y0 + y)[c]); };
    return v(ax, ay) * (1 - fx) * (1 - fy) + v(bx, ay) * fx * (1 - fy) + v(ax, by) * (1 - fx) * fy +
           v(bx, by) * fx * fy;
}

}  // namespace

TEST(ComputeCrop, CentredSquareAtScaleOne) {
    const CropWindow w = compute_crop({2048, 2048}, {1000, 1000, 100, 100}, with_resolution(512));
    EXPECT_EQ(w.side_w, 512);
    EXPECT_EQ(w.side_h, 512);
    EXPECT_EQ(w.working_w, 512);
    EXPECT_EQ(w.working_h, 512);
    // Centre (1050, 1050) minus half the side.
    EXPECT_EQ(w.x0, 794);
    EXPECT_EQ(w.y0, 794);
    EXPECT_EQ(w.scale(), (Ratio{1, 1}));
    EXPECT_TRUE(w.is_identity_scale());
}

TEST(ComputeCrop, FullImageIdentity) {
    const CropWindow w = compute_crop({512, 512}, {0, 0, 512, 512}, with_resolution(512));
    EXPECT_EQ(w, (CropWindow{0, 0, 512, 512, 512, 512}));
    EXPECT_TRUE(w.is_identity_scale());
}

TEST(ComputeCrop, WideImageFallsBackToFullImage) {
    const CropWindow w = compute_crop({1024, 256}, {0, 0, 800, 200}, with_resolution(512));
    EXPECT_EQ(w, (CropWindow{0, 0, 1024, 256, 512, 128}));
    EXPECT_EQ(w.scale(), (Ratio{2, 1}));
    EXPECT_EQ(w.scale_x(), (Ratio{2, 1}));
    EXPECT_EQ(w.scale_y(), (Ratio{2, 1}));
}

TEST(ComputeCrop, ShiftsInsteadOfShrinking) {
    const CropWindow w = compute_crop({1000, 800}, {0, 790, 10, 10}, with_resolution(512));
    EXPECT_EQ(w.x0, 0);
    EXPECT_EQ(w.y0, 800 - 512);
    EXPECT_EQ(w.side_w, 512);
}

TEST(ComputeCrop, LargeRegionGrowsTheWindow) {
    // L = ceil(400 * 1.25) = 500 > 256 and fits: window 500x500, scale 500/256.
    const CropWindow w = compute_crop({1200, 900}, {300, 200, 400, 300}, with_resolution(256));
    EXPECT_EQ(w.side_w, 500);
    EXPECT_EQ(w.working_w, 256);
    EXPECT_EQ(w.scale(), (Ratio{125, 64}));
}

TEST(ComputeCrop, TinyImageKeepsMinimumWorkingSize) {
    const CropWindow w = compute_crop({3, 2}, {0, 0, 1, 1}, with_resolution(512));
    EXPECT_EQ(w.side_w, 3);
    EXPECT_EQ(w.working_w % 8, 0);
    EXPECT_GE(w.working_h, 8);
}

TEST(ComputeCrop, RegionOutsideImageRejected) {
    EXPECT_THROW(compute_crop({100, 100}, {90, 90, 20, 5}, with_resolution(64)), Error);
    try {
        compute_crop({100, 100}, {-1, 0, 5, 5}, with_resolution(64));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RegionOutOfBounds);
    }
}

TEST(ComputeCrop, FuzzedInvariants) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        std::uniform_int_distribution<int> dim(1, 3000);
        const Extent e{dim(rng), dim(rng)};
        const int bw = std::uniform_int_distribution<int>(1, e.width)(rng);
        const int bh = std::uniform_int_distribution<int>(1, e.height)(rng);
        const BBox box{std::uniform_int_distribution<int>(0, e.width - bw)(rng),
                       std::uniform_int_distribution<int>(0, e.height - bh)(rng), bw, bh};
        const int s = 8 * std::uniform_int_distribution<int>(1, 96)(rng);
        const double margin = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const CropWindow w = compute_crop(e, box, with_resolution(s, margin));

        ASSERT_NO_THROW(validate_window(w, e));
        ASSERT_EQ(w.working_w % 8, 0);
        ASSERT_EQ(w.working_h % 8, 0);
        const int l = std::max(s, int(std::ceil(std::max(bw, bh) * (1.0 + margin) - 1e-9)));
        if (l <= std::min(e.width, e.height)) {
            ASSERT_EQ(w.side_w, l);
            ASSERT_EQ(w.side_h, l);
            ASSERT_EQ(w.working_w, s);
            ASSERT_EQ(w.working_h, s);
            ASSERT_EQ(w.scale_x(), w.scale_y());
            // Contains the margin-expanded region, clamped to the image.
            auto expand = [&](int o, int n, int limit) {
                const int grown = int(std::ceil(n * (1.0 + margin) - 1e-9));
                const int lo = o + int(std::floor((n - grown) / 2.0));
                return std::pair{std::max(0, lo), std::min(limit, lo + grown)};
            };
            const auto [ex0, ex1] = expand(box.x0, bw, e.width);
            const auto [ey0, ey1] = expand(box.y0, bh, e.height);
            ASSERT_LE(w.x0, ex0);
            ASSERT_LE(w.y0, ey0);
            ASSERT_GE(w.x0 + w.side_w, ex1);
            ASSERT_GE(w.y0 + w.side_h, ey1);
        } else {
            ASSERT_EQ(w.side(), e);
            const int longest = std::max(e.width, e.height);
            const int wl = std::max(w.working_w, w.working_h);
            ASSERT_EQ(wl, s);
            // Aspect within one multiple-of-8 quantum of the source aspect.
            const double exact_short = double(std::min(e.width, e.height)) * wl / longest;
            const int ws = std::min(w.working_w, w.working_h);
            ASSERT_LT(std::abs(ws - exact_short), 8.0) << e.width << "x" << e.height;
        }
    }
}

TEST(Extract, ScaleOneIsExactCopy) {
    std::mt19937_64 rng(12);
    const Image img = random_image(rng, {64, 48});
    const CropWindow w{5, 7, 32, 32, 32, 32};
    const Image out = extract(img, w);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) ASSERT_EQ(out.at(x, y), img.at(x + 5, y + 7));
}

TEST(Extract, ConstantStaysConstant) {
    const Image img({300, 200}, Rgb{17, 99, 240});
    const CropWindow w{0, 0, 300, 200, 64, 40};
    EXPECT_EQ(extract(img, w), Image({64, 40}, Rgb{17, 99, 240}));
}

TEST(Extract, CheckerboardAveragesHalfAwayFromZero) {
    Image img({2, 2});
    img.set(0, 0, {255, 255, 255});
    img.set(1, 1, {255, 255, 255});
    const Image out = extract(img, CropWindow{0, 0, 2, 2, 1, 1});
    // (0 + 255 + 255 + 0) / 4 = 127.5 -> 128
    EXPECT_EQ(out.at(0, 0), (Rgb{128, 128, 128}));
}

TEST(Extract, MatchesBilinearReference) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 20; ++i) {
        const Image img = random_image(rng, {97, 61});
        const int sw = std::uniform_int_distribution<int>(1, 97)(rng);
        const int sh = std::uniform_int_distribution<int>(1, 61)(rng);
        const int x0 = std::uniform_int_distribution<int>(0, 97 - sw)(rng);
        const int y0 = std::uniform_int_distribution<int>(0, 61 - sh)(rng);
        const int ow = 8 * std::uniform_int_distribution<int>(1, 12)(rng);
        const int oh = 8 * std::uniform_int_distribution<int>(1, 12)(rng);
        const Image out = extract(img, CropWindow{x0, y0, sw, sh, ow, oh});
        for (int y = 0; y < oh; ++y)
            for (int x = 0; x < ow; ++x)
                for (int c = 0; c < 3; ++c) {
                    const double ref = bilinear_ref(img, x0, y0, sw, sh, ow, oh, x, y, c);
                    ASSERT_LE(std::abs(out.at(x, y)[c] - ref), 0.5 + 1e-9);
                }
    }
}

TEST(ExtractMask, ScaleOneSubMask) {
    std::mt19937_64 rng(14);
    Mask m({40, 40});
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 40; ++x) m.set(x, y, rng() & 1);
    const Mask out = extract_mask(m, CropWindow{8, 4, 16, 24, 16, 24});
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 16; ++x) ASSERT_EQ(out.at(x, y), m.at(x + 8, y + 4));
}

TEST(ExtractMask, AllOnesStayAllOnes) {
    EXPECT_EQ(extract_mask(Mask({123, 77}, true), CropWindow{0, 0, 123, 77, 40, 24}), Mask({40, 24}, true));
}

TEST(ExtractMask, SinglePixelHalvedDropsBelowThreshold) {
    // Each output sample sits between four source pixels at weight 1/4 < 0.5.
    Mask m({4, 4});
    m.set(1, 1, true);
    EXPECT_TRUE(extract_mask(m, CropWindow{0, 0, 4, 4, 2, 2}).empty());
    // A full 2x2 block survives.
    m.set(0, 0, true);
    m.set(0, 1, true);
    m.set(1, 0, true);
    const Mask out = extract_mask(m, CropWindow{0, 0, 4, 4, 2, 2});
    EXPECT_TRUE(out.at(0, 0));
    EXPECT_EQ(out.count(), 1u);
}

TEST(PasteComposite, ZeroMaskIsIdentity) {
    std::mt19937_64 rng(15);
    const Image img = random_image(rng, {50, 40});
    const CropWindow w{10, 5, 30, 30, 16, 16};
    const Image processed({16, 16}, Rgb{1, 2, 3});
    EXPECT_EQ(paste_composite(img, processed, w, Mask({50, 40})), img);
}

TEST(PasteComposite, ScaleOneFullMaskPastesDirectly) {
    std::mt19937_64 rng(16);
    const Image img = random_image(rng, {40, 40});
    const Image processed = random_image(rng, {16, 16});
    const CropWindow w{4, 8, 16, 16, 16, 16};
    Mask mask({40, 40});
    for (int y = 8; y < 24; ++y)
        for (int x = 4; x < 20; ++x) mask.set(x, y, true);
    const Image out = paste_composite(img, processed, w, mask);
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 40; ++x) {
            const bool inside = mask.at(x, y);
            ASSERT_EQ(out.at(x, y), inside ? processed.at(x - 4, y - 8) : img.at(x, y));
        }
}

TEST(PasteComposite, HalfWindowPerPixelSelect) {
    std::mt19937_64 rng(17);
    const Image img = random_image(rng, {32, 32});
    const Image processed = random_image(rng, {32, 32});
    const CropWindow w{0, 0, 32, 32, 32, 32};
    Mask mask({32, 32});
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 16; ++x) mask.set(x, y, true);
    const Image out = paste_composite(img, processed, w, mask);
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x) ASSERT_EQ(out.at(x, y), x < 16 ? processed.at(x, y) : img.at(x, y));
}

TEST(PasteComposite, MaskOutsideWindowIgnored) {
    std::mt19937_64 rng(18);
    const Image img = random_image(rng, {32, 32});
    const CropWindow w{0, 0, 16, 16, 16, 16};
    const Image out = paste_composite(img, Image({16, 16}, Rgb{9, 9, 9}), w, Mask({32, 32}, true));
    EXPECT_EQ(out.at(15, 15), (Rgb{9, 9, 9}));
    EXPECT_EQ(out.at(16, 16), img.at(16, 16));
}

TEST(PasteComposite, DimensionChecks) {
    const Image img({32, 32});
    const CropWindow w{0, 0, 16, 16, 8, 8};
    auto code = [&](const Image& processed, const Mask& mask) {
        try {
            paste_composite(img, processed, w, mask);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::EmptyImage;
    };
    EXPECT_EQ(code(Image({16, 16}), Mask({32, 32})), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code(Image({8, 8}), Mask({31, 32})), ErrorCode::DimensionMismatch);
    EXPECT_THROW(paste_composite(img, Image({8, 8}), CropWindow{20, 20, 16, 16, 8, 8}, Mask({32, 32})), Error);
}

TEST(PasteComposite, OutsideMaskIdentityUnderResampling) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 30; ++i) {
        const Image img = random_image(rng, {120, 90});
        Mask mask({120, 90});
        for (int y = 0; y < 90; ++y)
            for (int x = 0; x < 120; ++x) mask.set(x, y, (rng() % 3) == 0);
        const CropWindow w{0, 0, 120, 90, 64, 48};
        const Image out = paste_composite(img, random_image(rng, {64, 48}), w, mask);
        for (int y = 0; y < 90; ++y)
            for (int x = 0; x < 120; ++x)
                if (!mask.at(x, y)) ASSERT_EQ(out.at(x, y), img.at(x, y));
    }
}

TEST(RoundTrip, ScaleOneReproducesInput) {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> dim(8, 300);
        const Image img = random_image(rng, {dim(rng), dim(rng)});
        const int side = 8 * std::uniform_int_distribution<int>(1, std::min(img.width(), img.height()) / 8)(rng);
        const int x0 = std::uniform_int_distribution<int>(0, img.width() - side)(rng);
        const int y0 = std::uniform_int_distribution<int>(0, img.height() - side)(rng);
        const CropWindow w{x0, y0, side, side, side, side};
        Mask inside(img.extent());
        for (int y = y0; y < y0 + side; ++y)
            for (int x = x0; x < x0 + side; ++x) inside.set(x, y, true);
        ASSERT_EQ(paste_composite(img, extract(img, w), w, inside), img);
    }
}
