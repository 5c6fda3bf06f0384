#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace clickfill {

enum class Mode { Remove, Fill, Replace };

std::string_view to_string(Mode mode) noexcept;
// Throws InvalidConfig on anything other than remove|fill|replace.
Mode parse_mode(std::string_view text);

// How one mask is chosen from a multi-candidate segmentation.
struct MaskPolicy {
    enum class Kind { HighestScore, Largest, Index };
    Kind kind = Kind::HighestScore;
    std::size_t index = 0;  // only for Kind::Index

    static MaskPolicy highest_score() { return {Kind::HighestScore, 0}; }
    static MaskPolicy largest() { return {Kind::Largest, 0}; }
    static MaskPolicy at(std::size_t k) { return {Kind::Index, k}; }
};

struct PipelineConfig {
    Mode mode = Mode::Remove;

    int open_radius = 0;
    int dilate_radius_remove = 15;
    int dilate_radius_fill_min = 35;
    double dilate_fraction_fill = 0.10;
    // When set, replaces the computed dilation radius for remove and fill.
    std::optional<int> dilate_radius_override;

    int working_resolution = 512;
    double crop_margin = 0.25;
    std::uint64_t seed = 0;
    MaskPolicy mask_policy;

    std::string segmenter = "region-grow";
    std::string inpainter = "harmonic";
    std::string generator = "pattern";

    // Throws InvalidConfig when an invariant is violated.
    void validate() const;
};

}  // namespace clickfill
