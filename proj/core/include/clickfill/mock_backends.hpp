#pragma once

#include "clickfill/backends.hpp"

#include <cstdint>
#include <string_view>

namespace clickfill {

// Region growing stand-in for a promptable segmenter. Each click seeds a
// 4-connected flood fill over pixels whose every channel is within
// `tolerance` of the clicked pixel. Positive regions are unioned, negative
// regions carved out. Emits one candidate with score 1.0, or none.
class RegionGrowSegmenter final : public Segmenter {
public:
    static constexpr int kDefaultTolerance = 32;

    explicit RegionGrowSegmenter(int tolerance = kDefaultTolerance, std::string id = "region-grow");

    const BackendDescriptor& descriptor() const override { return descriptor_; }
    std::vector<SegmentationCandidate> segment(const Image& image, const ClickPrompt& clicks) const override;

    Mask grow(const Image& image, int x, int y) const;

private:
    int tolerance_;
    BackendDescriptor descriptor_;
};

// Solves the discrete Laplace equation over masked pixels by Jacobi
// iteration, unmasked 4-neighbours held fixed. Masked pixels start at the
// mean of the boundary ring. Throws BackendFailure if there is no boundary.
class HarmonicFillInpainter final : public Inpainter {
public:
    struct Options {
        double tolerance = 0.5;  // stop once the max per-channel change drops below this
        int max_iterations = 10'000;
    };

    HarmonicFillInpainter();
    explicit HarmonicFillInpainter(Options options, std::string id = "harmonic");

    const BackendDescriptor& descriptor() const override { return descriptor_; }
    Image inpaint(const Image& image, const Mask& mask) const override;

private:
    Options options_;
    BackendDescriptor descriptor_;
};

// FNV-1a 64 over the prompt bytes followed by the seed as 8 little-endian bytes.
std::uint64_t stable_hash(std::string_view prompt, std::uint64_t seed) noexcept;

// Least-significant three hash bytes as R, G, B.
Rgb pattern_color(std::string_view prompt, std::uint64_t seed) noexcept;

// Fills the mask with pattern_color(prompt, seed).
class PatternGenerator final : public Generator {
public:
    explicit PatternGenerator(std::string id = "pattern");

    const BackendDescriptor& descriptor() const override { return descriptor_; }
    Image generate(const Image& image, const Mask& mask, std::string_view prompt,
                   std::uint64_t seed) const override;

private:
    BackendDescriptor descriptor_;
};

}  // namespace clickfill
