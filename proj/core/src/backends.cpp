#include "clickfill/backends.hpp"

#include "clickfill/error.hpp"
#include "clickfill/mock_backends.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace clickfill {

namespace {

template <typename Fn>
auto call_backend(const BackendDescriptor& d, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorCode::BackendFailure, d.id + ": " + e.what());
    }
}

bool contains_positive(const Mask& mask, const ClickPrompt& clicks) {
    return std::any_of(clicks.points.begin(), clicks.points.end(), [&](const ClickPoint& p) {
        return p.label == PointLabel::Positive && mask.at(p.x, p.y);
    });
}

Image composite_through(const Image& input, const Image& produced, const Mask& mask, const BackendDescriptor& d) {
    if (produced.extent() != input.extent()) {
        throw Error(ErrorCode::BackendFailure, d.id + " returned an image of different size");
    }
    Image out = input;
    for (int y = 0; y < input.height(); ++y) {
        for (int x = 0; x < input.width(); ++x) {
            if (mask.at(x, y)) out.set(x, y, produced.at(x, y));
        }
    }
    return out;
}

void require_mask(const Image& image, const Mask& mask) {
    require_same_extent(mask.extent(), image.extent(), "mask vs image");
    if (mask.empty()) {
        throw Error(ErrorCode::EmptyMask, "mask has no set pixels");
    }
}

// Single-lane adapters for backends that cannot take concurrent calls.
class SerialSegmenter final : public Segmenter {
public:
    explicit SerialSegmenter(std::shared_ptr<const Segmenter> inner) : inner_(std::move(inner)) {}
    const BackendDescriptor& descriptor() const override { return inner_->descriptor(); }
    std::vector<SegmentationCandidate> segment(const Image& image, const ClickPrompt& clicks) const override {
        std::lock_guard lock(lane_);
        return inner_->segment(image, clicks);
    }

private:
    std::shared_ptr<const Segmenter> inner_;
    mutable std::mutex lane_;
};

class SerialInpainter final : public Inpainter {
public:
    explicit SerialInpainter(std::shared_ptr<const Inpainter> inner) : inner_(std::move(inner)) {}
    const BackendDescriptor& descriptor() const override { return inner_->descriptor(); }
    Image inpaint(const Image& image, const Mask& mask) const override {
        std::lock_guard lock(lane_);
        return inner_->inpaint(image, mask);
    }

private:
    std::shared_ptr<const Inpainter> inner_;
    mutable std::mutex lane_;
};

class SerialGenerator final : public Generator {
public:
    explicit SerialGenerator(std::shared_ptr<const Generator> inner) : inner_(std::move(inner)) {}
    const BackendDescriptor& descriptor() const override { return inner_->descriptor(); }
    Image generate(const Image& image, const Mask& mask, std::string_view prompt,
                   std::uint64_t seed) const override {
        std::lock_guard lock(lane_);
        return inner_->generate(image, mask, prompt, seed);
    }

private:
    std::shared_ptr<const Generator> inner_;
    mutable std::mutex lane_;
};

template <typename T, typename Serial>
void insert(std::map<std::string, std::shared_ptr<const T>>& table, std::shared_ptr<const T> backend,
            BackendRole role) {
    if (!backend) throw Error(ErrorCode::InvalidConfig, "null backend");
    const auto& d = backend->descriptor();
    if (d.role != role) {
        throw Error(ErrorCode::InvalidConfig, d.id + " registered under the wrong role");
    }
    if (table.contains(d.id)) {
        throw Error(ErrorCode::InvalidConfig, "duplicate " + std::string(to_string(role)) + " id '" + d.id + "'");
    }
    if (d.serial) backend = std::make_shared<Serial>(std::move(backend));
    table.emplace(d.id, std::move(backend));
}

template <typename T>
std::shared_ptr<const T> lookup(const std::map<std::string, std::shared_ptr<const T>>& table,
                                const std::string& id, BackendRole role) {
    auto it = table.find(id);
    if (it == table.end()) {
        throw Error(ErrorCode::UnknownBackend, "no " + std::string(to_string(role)) + " named '" + id + "'");
    }
    return it->second;
}

}  // namespace

std::string_view to_string(BackendRole role) noexcept {
    switch (role) {
    case BackendRole::Segmenter: return "segmenter";
    case BackendRole::Inpainter: return "inpainter";
    case BackendRole::Generator: return "generator";
    }
    return "segmenter";
}

std::vector<SegmentationCandidate> segment(const Segmenter& backend, const Image& image, const ClickPrompt& clicks) {
    clicks.validate(image.extent());
    auto raw = call_backend(backend.descriptor(), [&] { return backend.segment(image, clicks); });

    std::vector<SegmentationCandidate> kept;
    for (auto& c : raw) {
        if (c.mask.extent() != image.extent()) continue;
        if (!(c.score >= 0.0 && c.score <= 1.0)) continue;
        if (!contains_positive(c.mask, clicks)) continue;
        kept.push_back(std::move(c));
    }
    if (kept.empty()) {
        throw Error(ErrorCode::NoObjectFound, "no candidate contains a positive click");
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const SegmentationCandidate& a, const SegmentationCandidate& b) { return a.score > b.score; });
    return kept;
}

Image inpaint(const Inpainter& backend, const Image& image, const Mask& mask) {
    require_mask(image, mask);
    const auto& d = backend.descriptor();
    Image produced = call_backend(d, [&] { return backend.inpaint(image, mask); });
    return composite_through(image, produced, mask, d);
}

Image generate(const Generator& backend, const Image& image, const Mask& mask, std::string_view prompt,
               std::uint64_t seed) {
    require_mask(image, mask);
    if (prompt.empty()) {
        throw Error(ErrorCode::EmptyPrompt, "a text prompt is required");
    }
    const auto& d = backend.descriptor();
    Image produced = call_backend(d, [&] { return backend.generate(image, mask, prompt, seed); });
    return composite_through(image, produced, mask, d);
}

Mask select_mask(std::span<const SegmentationCandidate> candidates, MaskPolicy policy) {
    if (candidates.empty()) {
        throw Error(ErrorCode::EmptyCandidates, "no candidates to select from");
    }
    std::size_t best = 0;
    switch (policy.kind) {
    case MaskPolicy::Kind::HighestScore:
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            if (candidates[i].score > candidates[best].score) best = i;
        }
        break;
    case MaskPolicy::Kind::Largest: {
        std::size_t best_area = candidates[0].mask.count();
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            const std::size_t area = candidates[i].mask.count();
            if (area > best_area) {
                best = i;
                best_area = area;
            }
        }
        break;
    }
    case MaskPolicy::Kind::Index:
        if (policy.index >= candidates.size()) {
            throw Error(ErrorCode::BadMask, "candidate index " + std::to_string(policy.index) + " out of range");
        }
        best = policy.index;
        break;
    }
    return candidates[best].mask;
}

void BackendRegistry::add(std::shared_ptr<const Segmenter> backend) {
    insert<Segmenter, SerialSegmenter>(segmenters_, std::move(backend), BackendRole::Segmenter);
}
void BackendRegistry::add(std::shared_ptr<const Inpainter> backend) {
    insert<Inpainter, SerialInpainter>(inpainters_, std::move(backend), BackendRole::Inpainter);
}
void BackendRegistry::add(std::shared_ptr<const Generator> backend) {
    insert<Generator, SerialGenerator>(generators_, std::move(backend), BackendRole::Generator);
}

std::shared_ptr<const Segmenter> BackendRegistry::segmenter(const std::string& id) const {
    return lookup(segmenters_, id, BackendRole::Segmenter);
}
std::shared_ptr<const Inpainter> BackendRegistry::inpainter(const std::string& id) const {
    return lookup(inpainters_, id, BackendRole::Inpainter);
}
std::shared_ptr<const Generator> BackendRegistry::generator(const std::string& id) const {
    return lookup(generators_, id, BackendRole::Generator);
}

BackendSet BackendRegistry::resolve(const PipelineConfig& config) const {
    return {segmenter(config.segmenter), inpainter(config.inpainter), generator(config.generator)};
}

std::vector<BackendDescriptor> BackendRegistry::descriptors() const {
    std::vector<BackendDescriptor> out;
    for (const auto& [id, b] : segmenters_) out.push_back(b->descriptor());
    for (const auto& [id, b] : inpainters_) out.push_back(b->descriptor());
    for (const auto& [id, b] : generators_) out.push_back(b->descriptor());
    return out;
}

BackendRegistry BackendRegistry::with_mocks() {
    BackendRegistry registry;
    registry.add(std::shared_ptr<const Segmenter>(std::make_shared<RegionGrowSegmenter>()));
    registry.add(std::shared_ptr<const Inpainter>(std::make_shared<HarmonicFillInpainter>()));
    registry.add(std::shared_ptr<const Generator>(std::make_shared<PatternGenerator>()));
    return registry;
}

}  // namespace clickfill
