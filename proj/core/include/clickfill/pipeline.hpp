#pragma once

#include "clickfill/backends.hpp"
#include "clickfill/config.hpp"
#include "clickfill/fidelity.hpp"
#include "clickfill/image.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace clickfill {

struct StageTiming {
    std::string stage;
    double milliseconds = 0.0;
};

struct PipelineResult {
    Image output;
    Mask object_mask;  // cleaned object, before any dilation
    Mask edit_mask;    // region composited from backend output
    CropWindow window;
    std::vector<StageTiming> timings;
};

// Dilation radius a mode applies to the cleaned object mask. Fill grows with
// the object: max(fill_min, ceil(fraction * long side of the object bbox)).
int edit_dilation_radius(Mode mode, const BBox& object_box, const PipelineConfig& config);

// Runs the three click-driven workflows over a fixed set of backends.
// Stateless between calls; one instance may serve many threads.
class Pipeline {
public:
    explicit Pipeline(BackendSet backends);

    // Click -> segmentation -> config.mask_policy selection.
    Mask segment_object(const Image& image, const ClickPrompt& clicks, const PipelineConfig& config) const;

    PipelineResult remove_anything(const Image& image, const ClickPrompt& clicks, PipelineConfig config) const;
    PipelineResult fill_anything(const Image& image, const ClickPrompt& clicks, std::string_view prompt,
                                 PipelineConfig config) const;
    PipelineResult replace_anything(const Image& image, const ClickPrompt& clicks, std::string_view prompt,
                                    PipelineConfig config) const;

    // Mode dispatch starting from an already chosen object mask (segmenter
    // bypass used by --mask-in and by the service once a candidate is picked).
    // `prompt` is ignored for remove.
    PipelineResult run(Mode mode, const Image& image, const Mask& object_mask, std::string_view prompt,
                       PipelineConfig config) const;

    const BackendSet& backends() const noexcept { return backends_; }

private:
    PipelineResult run_timed(Mode mode, const Image& image, const Mask& object_mask, std::string_view prompt,
                             const PipelineConfig& config, std::vector<StageTiming> timings) const;

    BackendSet backends_;
};

}  // namespace clickfill
