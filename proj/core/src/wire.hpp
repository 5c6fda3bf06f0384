#pragma once

// JSON encodings shared by the remote-backend transport and the HTTP service.

#include "clickfill/backends.hpp"
#include "clickfill/codec.hpp"
#include "clickfill/error.hpp"
#include "clickfill/fidelity.hpp"
#include "clickfill/pipeline.hpp"

#include "json.hpp"

#include <string>

namespace clickfill::wire {

using json = nlohmann::json;

inline std::string image_b64(const Image& image) { return base64_encode(encode_png(image)); }
inline std::string mask_b64(const Mask& mask) { return base64_encode(encode_mask_png(mask)); }

inline Image image_from_b64(const std::string& text) { return decode_image(base64_decode(text)); }
inline Mask mask_from_b64(const std::string& text) { return decode_mask_png(base64_decode(text)); }

inline std::string_view label_name(PointLabel label) {
    return label == PointLabel::Positive ? "positive" : "negative";
}

// Accepts "positive"/"negative", 1/0 or true/false.
inline PointLabel parse_label(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "positive") return PointLabel::Positive;
        if (s == "negative") return PointLabel::Negative;
    } else if (j.is_boolean()) {
        return j.get<bool>() ? PointLabel::Positive : PointLabel::Negative;
    } else if (j.is_number_integer()) {
        const auto v = j.get<int>();
        if (v == 1) return PointLabel::Positive;
        if (v == 0) return PointLabel::Negative;
    }
    throw Error(ErrorCode::InvalidPrompt, "point label must be 'positive' or 'negative'");
}

inline json points_to_json(const ClickPrompt& clicks) {
    json arr = json::array();
    for (const auto& p : clicks.points) {
        arr.push_back({{"x", p.x}, {"y", p.y}, {"label", label_name(p.label)}});
    }
    return arr;
}

inline ClickPrompt points_from_json(const json& arr) {
    if (!arr.is_array()) throw Error(ErrorCode::InvalidPrompt, "points must be an array");
    ClickPrompt clicks;
    for (const auto& p : arr) {
        if (!p.is_object() || !p.contains("x") || !p.contains("y") || !p["x"].is_number_integer() ||
            !p["y"].is_number_integer()) {
            throw Error(ErrorCode::InvalidPrompt, "each point needs integer x and y");
        }
        const PointLabel label = p.contains("label") ? parse_label(p["label"]) : PointLabel::Positive;
        clicks.points.push_back({p["x"].get<int>(), p["y"].get<int>(), label});
    }
    return clicks;
}

inline json bbox_to_json(const BBox& b) { return {{"x", b.x0}, {"y", b.y0}, {"w", b.w}, {"h", b.h}}; }

inline json window_to_json(const CropWindow& w) {
    return {{"x0", w.x0},          {"y0", w.y0},
            {"side_w", w.side_w},  {"side_h", w.side_h},
            {"working_w", w.working_w}, {"working_h", w.working_h},
            {"scale", {w.scale().num, w.scale().den}}};
}

inline json timings_to_json(const std::vector<StageTiming>& timings) {
    json out = json::object();
    for (const auto& t : timings) out[t.stage] = out.value(t.stage, 0.0) + t.milliseconds;
    return out;
}

inline json config_to_json(const PipelineConfig& c) {
    json j = {{"mode", to_string(c.mode)},
              {"open_radius", c.open_radius},
              {"dilate_radius_remove", c.dilate_radius_remove},
              {"dilate_radius_fill_min", c.dilate_radius_fill_min},
              {"dilate_fraction_fill", c.dilate_fraction_fill},
              {"working_resolution", c.working_resolution},
              {"crop_margin", c.crop_margin},
              {"seed", c.seed},
              {"segmenter", c.segmenter},
              {"inpainter", c.inpainter},
              {"generator", c.generator}};
    j["dilate_radius"] = c.dilate_radius_override ? json(*c.dilate_radius_override) : json(nullptr);
    return j;
}

// Applies the recognised keys of `j` onto `c`; unknown keys throw InvalidConfig.
inline void apply_config_overrides(PipelineConfig& c, const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config overrides must be an object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "open_radius") c.open_radius = value.get<int>();
            else if (key == "dilate_radius_remove") c.dilate_radius_remove = value.get<int>();
            else if (key == "dilate_radius_fill_min") c.dilate_radius_fill_min = value.get<int>();
            else if (key == "dilate_fraction_fill") c.dilate_fraction_fill = value.get<double>();
            else if (key == "dilate_radius") {
                c.dilate_radius_override = value.is_null() ? std::nullopt : std::optional<int>(value.get<int>());
            } else if (key == "working_resolution") c.working_resolution = value.get<int>();
            else if (key == "crop_margin") c.crop_margin = value.get<double>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, e.what());
    }
    c.validate();
}

inline json error_body(const Error& e) { return {{"error", e.name()}, {"message", e.what()}}; }

}  // namespace clickfill::wire
