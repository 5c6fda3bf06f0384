#include "clickfill/config.hpp"
#include "clickfill/error.hpp"
#include "clickfill/image.hpp"

#include <gtest/gtest.h>

using namespace clickfill;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected clickfill::Error";
    return ErrorCode::InvalidConfig;
}

}  // namespace

TEST(Image, FillAndAccess) {
    Image img({4, 3}, Rgb{10, 20, 30});
    EXPECT_EQ(img.pixels().size(), 4u * 3u * 3u);
    EXPECT_EQ(img.at(3, 2), (Rgb{10, 20, 30}));
    img.set(1, 2, {1, 2, 3});
    EXPECT_EQ(img.at(1, 2), (Rgb{1, 2, 3}));
    // Row-major, interleaved.
    EXPECT_EQ(img.pixels()[(2 * 4 + 1) * 3 + 2], 3);
}

TEST(Image, RejectsBadExtents) {
    EXPECT_EQ(code_of([] { Image({0, 5}); }), ErrorCode::EmptyImage);
    EXPECT_EQ(code_of([] { Image({5, -1}); }), ErrorCode::EmptyImage);
    EXPECT_EQ(code_of([] { Image({kMaxSide + 1, 2}); }), ErrorCode::DimensionTooLarge);
    EXPECT_EQ(code_of([] { Image({2, kMaxSide + 1}); }), ErrorCode::DimensionTooLarge);
    EXPECT_NO_THROW(Image({kMaxSide, 1}));
}

TEST(Image, BufferLengthMustMatch) {
    EXPECT_EQ(code_of([] { Image({2, 2}, std::vector<std::uint8_t>(11)); }), ErrorCode::ChannelMismatch);
    EXPECT_NO_THROW(Image({2, 2}, std::vector<std::uint8_t>(12)));
}

TEST(Mask, BitsAreBinary) {
    EXPECT_EQ(code_of([] { Mask({2, 1}, std::vector<std::uint8_t>{0, 2}); }), ErrorCode::BadMask);
    Mask m({2, 1}, std::vector<std::uint8_t>{0, 1});
    EXPECT_FALSE(m.at(0, 0));
    EXPECT_TRUE(m.at(1, 0));
    EXPECT_EQ(m.count(), 1u);
    EXPECT_FALSE(m.empty());
    EXPECT_TRUE(Mask({3, 3}).empty());
}

TEST(Mask, Subset) {
    Mask a({3, 3}), b({3, 3});
    a.set(1, 1, true);
    b.set(1, 1, true);
    b.set(0, 0, true);
    EXPECT_TRUE(is_subset(a, b));
    EXPECT_FALSE(is_subset(b, a));
    EXPECT_EQ(code_of([&] { is_subset(a, Mask({2, 2})); }), ErrorCode::DimensionMismatch);
}

TEST(ValidateImage, DropsAlpha) {
    Raster r{2, 1, 4, {1, 2, 3, 255, 4, 5, 6, 0}};
    const Image img = validate_image(r);
    EXPECT_EQ(img.at(0, 0), (Rgb{1, 2, 3}));
    EXPECT_EQ(img.at(1, 0), (Rgb{4, 5, 6}));
}

TEST(ValidateImage, RejectsOtherChannelCounts) {
    EXPECT_EQ(code_of([] { validate_image(Raster{1, 1, 2, {0, 0}}); }), ErrorCode::ChannelMismatch);
    EXPECT_EQ(code_of([] { validate_image(Raster{1, 1, 1, {0}}); }), ErrorCode::ChannelMismatch);
    EXPECT_EQ(code_of([] { validate_image(Raster{5000, 1, 3, {}}); }), ErrorCode::DimensionTooLarge);
}

TEST(ClickPrompt, Validation) {
    const Extent e{10, 8};
    EXPECT_NO_THROW((ClickPrompt{{{0, 0, PointLabel::Positive}, {9, 7, PointLabel::Negative}}}.validate(e)));
    EXPECT_EQ(code_of([&] { ClickPrompt{{{-1, 0, PointLabel::Positive}}}.validate(e); }),
              ErrorCode::PointOutOfBounds);
    EXPECT_EQ(code_of([&] { ClickPrompt{{{10, 0, PointLabel::Positive}}}.validate(e); }),
              ErrorCode::PointOutOfBounds);
    EXPECT_EQ(code_of([&] { ClickPrompt{{{1, 1, PointLabel::Negative}}}.validate(e); }), ErrorCode::InvalidPrompt);
    EXPECT_EQ(code_of([&] { ClickPrompt{}.validate(e); }), ErrorCode::InvalidPrompt);
}

TEST(Error, WhatCarriesName) {
    const Error e(ErrorCode::NoObjectFound, "nothing under the click");
    EXPECT_EQ(e.name(), "NoObjectFound");
    EXPECT_NE(std::string(e.what()).find("NoObjectFound"), std::string::npos);
}

TEST(Config, ModeRoundTrip) {
    for (Mode m : {Mode::Remove, Mode::Fill, Mode::Replace}) EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_EQ(code_of([] { parse_mode("erase"); }), ErrorCode::InvalidConfig);
}

TEST(Config, Defaults) {
    const PipelineConfig c;
    EXPECT_EQ(c.working_resolution, 512);
    EXPECT_EQ(c.dilate_radius_remove, 15);
    EXPECT_EQ(c.dilate_radius_fill_min, 35);
    EXPECT_DOUBLE_EQ(c.dilate_fraction_fill, 0.10);
    EXPECT_DOUBLE_EQ(c.crop_margin, 0.25);
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, ValidateRejectsNonsense) {
    auto bad = [](auto edit) {
        PipelineConfig c;
        edit(c);
        return code_of([&] { c.validate(); });
    };
    EXPECT_EQ(bad([](PipelineConfig& c) { c.open_radius = -1; }), ErrorCode::InvalidConfig);
    EXPECT_EQ(bad([](PipelineConfig& c) { c.working_resolution = 500; }), ErrorCode::InvalidConfig);
    EXPECT_EQ(bad([](PipelineConfig& c) { c.working_resolution = 0; }), ErrorCode::InvalidConfig);
    EXPECT_EQ(bad([](PipelineConfig& c) { c.crop_margin = -0.1; }), ErrorCode::InvalidConfig);
    EXPECT_EQ(bad([](PipelineConfig& c) { c.dilate_radius_override = -3; }), ErrorCode::InvalidConfig);
}
