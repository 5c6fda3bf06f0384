#include "clickfill/config.hpp"

#include "clickfill/error.hpp"

#include <cmath>

namespace clickfill {

std::string_view to_string(Mode mode) noexcept {
    switch (mode) {
    case Mode::Remove: return "remove";
    case Mode::Fill: return "fill";
    case Mode::Replace: return "replace";
    }
    return "remove";
}

Mode parse_mode(std::string_view text) {
    if (text == "remove") return Mode::Remove;
    if (text == "fill") return Mode::Fill;
    if (text == "replace") return Mode::Replace;
    throw Error(ErrorCode::InvalidConfig, "unknown mode '" + std::string(text) + "'");
}

void PipelineConfig::validate() const {
    if (working_resolution <= 0 || working_resolution % 8 != 0) {
        throw Error(ErrorCode::InvalidConfig, "working_resolution must be a positive multiple of 8");
    }
    if (open_radius < 0 || dilate_radius_remove < 0 || dilate_radius_fill_min < 0 ||
        (dilate_radius_override && *dilate_radius_override < 0)) {
        throw Error(ErrorCode::InvalidConfig, "radii must be non-negative");
    }
    if (!(dilate_fraction_fill >= 0.0) || !std::isfinite(dilate_fraction_fill)) {
        throw Error(ErrorCode::InvalidConfig, "dilate_fraction_fill must be a finite value >= 0");
    }
    if (!(crop_margin >= 0.0) || !std::isfinite(crop_margin)) {
        throw Error(ErrorCode::InvalidConfig, "crop_margin must be a finite value >= 0");
    }
}

}  // namespace clickfill
