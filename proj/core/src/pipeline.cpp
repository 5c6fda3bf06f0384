#include "clickfill/pipeline.hpp"

#include "clickfill/error.hpp"
#include "clickfill/mask_ops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace clickfill {

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

    template <typename Fn>
    auto operator()(const char* stage, Fn&& fn) -> decltype(fn()) {
        const auto start = std::chrono::steady_clock::now();
        struct Record {
            std::vector<StageTiming>& sink;
            const char* stage;
            std::chrono::steady_clock::time_point start;
            ~Record() {
                const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
                sink.push_back({stage, dt.count()});
            }
        } record{sink_, stage, start};
        return fn();
    }

private:
    std::vector<StageTiming>& sink_;
};

void require_prompt(Mode mode, std::string_view prompt) {
    if (mode != Mode::Remove && prompt.empty()) {
        throw Error(ErrorCode::EmptyPrompt, std::string(to_string(mode)) + " needs a text prompt");
    }
}

}  // namespace

int edit_dilation_radius(Mode mode, const BBox& object_box, const PipelineConfig& config) {
    switch (mode) {
    case Mode::Remove:
        return config.dilate_radius_override.value_or(config.dilate_radius_remove);
    case Mode::Fill: {
        if (config.dilate_radius_override) return *config.dilate_radius_override;
        const double grown = config.dilate_fraction_fill * std::max(object_box.w, object_box.h);
        return std::max(config.dilate_radius_fill_min, static_cast<int>(std::ceil(grown - 1e-9)));
    }
    case Mode::Replace:
        return 0;
    }
    return 0;
}

Pipeline::Pipeline(BackendSet backends) : backends_(std::move(backends)) {
    if (!backends_.segmenter || !backends_.inpainter || !backends_.generator) {
        throw Error(ErrorCode::InvalidConfig, "pipeline needs a segmenter, an inpainter and a generator");
    }
}

Mask Pipeline::segment_object(const Image& image, const ClickPrompt& clicks, const PipelineConfig& config) const {
    const auto candidates = segment(*backends_.segmenter, image, clicks);
    return select_mask(candidates, config.mask_policy);
}

PipelineResult Pipeline::remove_anything(const Image& image, const ClickPrompt& clicks, PipelineConfig config) const {
    config.mode = Mode::Remove;
    config.validate();
    std::vector<StageTiming> timings;
    const Mask object = StageClock(timings)("segment", [&] { return segment_object(image, clicks, config); });
    return run_timed(Mode::Remove, image, object, {}, config, std::move(timings));
}

PipelineResult Pipeline::fill_anything(const Image& image, const ClickPrompt& clicks, std::string_view prompt,
                                       PipelineConfig config) const {
    config.mode = Mode::Fill;
    config.validate();
    require_prompt(Mode::Fill, prompt);
    std::vector<StageTiming> timings;
    const Mask object = StageClock(timings)("segment", [&] { return segment_object(image, clicks, config); });
    return run_timed(Mode::Fill, image, object, prompt, config, std::move(timings));
}

PipelineResult Pipeline::replace_anything(const Image& image, const ClickPrompt& clicks, std::string_view prompt,
                                          PipelineConfig config) const {
    config.mode = Mode::Replace;
    config.validate();
    require_prompt(Mode::Replace, prompt);
    std::vector<StageTiming> timings;
    const Mask object = StageClock(timings)("segment", [&] { return segment_object(image, clicks, config); });
    return run_timed(Mode::Replace, image, object, prompt, config, std::move(timings));
}

PipelineResult Pipeline::run(Mode mode, const Image& image, const Mask& object_mask, std::string_view prompt,
                             PipelineConfig config) const {
    config.mode = mode;
    config.validate();
    return run_timed(mode, image, object_mask, prompt, config, {});
}

PipelineResult Pipeline::run_timed(Mode mode, const Image& image, const Mask& object_mask, std::string_view prompt,
                                   const PipelineConfig& config, std::vector<StageTiming> timings) const {
    require_prompt(mode, prompt);
    if (object_mask.extent() != image.extent()) {
        throw Error(ErrorCode::BadMask, "object mask is " + std::to_string(object_mask.width()) + "x" +
                                            std::to_string(object_mask.height()) + ", image is " +
                                            std::to_string(image.width()) + "x" + std::to_string(image.height()));
    }
    if (object_mask.empty()) {
        throw Error(ErrorCode::EmptyMask, "object mask has no set pixels");
    }

    StageClock clock(timings);
    const Mask object = clock("refine", [&] { return refine(object_mask, config.open_radius, 0); });

    Mask edit = clock("dilate", [&] {
        if (mode == Mode::Replace) {
            Mask complement = invert(object);
            if (complement.empty()) {
                throw Error(ErrorCode::ObjectCoversImage, "object covers the whole image, nothing to replace");
            }
            return complement;
        }
        return dilate(object, edit_dilation_radius(mode, *bbox(object), config));
    });

    const CropWindow window = clock("crop", [&] {
        const BBox region = mode == Mode::Replace ? BBox{0, 0, image.width(), image.height()} : *bbox(edit);
        return compute_crop(image.extent(), region, config);
    });

    const auto& descriptor = mode == Mode::Remove ? backends_.inpainter->descriptor() : backends_.generator->descriptor();
    if (descriptor.size_multiple > 1 &&
        (window.working_w % descriptor.size_multiple != 0 || window.working_h % descriptor.size_multiple != 0)) {
        throw Error(ErrorCode::InvalidConfig, descriptor.id + " needs working sizes divisible by " +
                                                  std::to_string(descriptor.size_multiple));
    }

    const auto [patch, patch_mask] =
        clock("extract", [&] { return std::pair{extract(image, window), extract_mask(edit, window)}; });

    const Image processed = clock("backend", [&] {
        if (mode == Mode::Remove) return inpaint(*backends_.inpainter, patch, patch_mask);
        return generate(*backends_.generator, patch, patch_mask, prompt, config.seed);
    });

    Image output = clock("composite", [&] { return paste_composite(image, processed, window, edit); });

    return PipelineResult{std::move(output), object, std::move(edit), window, std::move(timings)};
}

}  // namespace clickfill
