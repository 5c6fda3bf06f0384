#pragma once

#include "clickfill/config.hpp"
#include "clickfill/image.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clickfill {

struct SegmentationCandidate {
    Mask mask;
    double score = 0.0;  // [0, 1]
};

enum class BackendRole { Segmenter, Inpainter, Generator };

std::string_view to_string(BackendRole role) noexcept;

struct BackendDescriptor {
    BackendRole role = BackendRole::Segmenter;
    std::string id;
    bool deterministic = true;
    // Serial backends are funnelled through a single lane by the registry.
    bool serial = false;
    // Working width and height must be multiples of this.
    int size_multiple = 1;
};

// Backend interfaces. Implementations may be called from several threads at
// once unless their descriptor says `serial`.
class Segmenter {
public:
    virtual ~Segmenter() = default;
    virtual const BackendDescriptor& descriptor() const = 0;
    virtual std::vector<SegmentationCandidate> segment(const Image& image, const ClickPrompt& clicks) const = 0;
};

class Inpainter {
public:
    virtual ~Inpainter() = default;
    virtual const BackendDescriptor& descriptor() const = 0;
    virtual Image inpaint(const Image& image, const Mask& mask) const = 0;
};

class Generator {
public:
    virtual ~Generator() = default;
    virtual const BackendDescriptor& descriptor() const = 0;
    virtual Image generate(const Image& image, const Mask& mask, std::string_view prompt,
                           std::uint64_t seed) const = 0;
};

// Contract-enforcing entry points. These validate inputs, translate foreign
// exceptions into BackendFailure and, for inpaint/generate, re-composite the
// backend output through the mask so unmasked pixels are bit-identical to
// the input whatever the backend returned.

// Candidates that miss every positive click (or have the wrong size) are
// dropped; survivors come back sorted by descending score, stable.
// Throws NoObjectFound when none survive.
std::vector<SegmentationCandidate> segment(const Segmenter& backend, const Image& image, const ClickPrompt& clicks);

// Throws EmptyMask, DimensionMismatch, BackendFailure.
Image inpaint(const Inpainter& backend, const Image& image, const Mask& mask);

// Throws EmptyMask, EmptyPrompt, DimensionMismatch, BackendFailure.
Image generate(const Generator& backend, const Image& image, const Mask& mask, std::string_view prompt,
               std::uint64_t seed);

// Ties resolve to the lower index. Throws EmptyCandidates, or BadMask when
// an index policy is out of range.
Mask select_mask(std::span<const SegmentationCandidate> candidates, MaskPolicy policy);

struct BackendSet {
    std::shared_ptr<const Segmenter> segmenter;
    std::shared_ptr<const Inpainter> inpainter;
    std::shared_ptr<const Generator> generator;
};

class BackendRegistry {
public:
    // Registers under descriptor().id. Duplicate ids within a role throw
    // InvalidConfig.
    void add(std::shared_ptr<const Segmenter> backend);
    void add(std::shared_ptr<const Inpainter> backend);
    void add(std::shared_ptr<const Generator> backend);

    // Throw UnknownBackend.
    std::shared_ptr<const Segmenter> segmenter(const std::string& id) const;
    std::shared_ptr<const Inpainter> inpainter(const std::string& id) const;
    std::shared_ptr<const Generator> generator(const std::string& id) const;

    BackendSet resolve(const PipelineConfig& config) const;
    std::vector<BackendDescriptor> descriptors() const;

    // Registry holding the three deterministic mocks under their default ids.
    static BackendRegistry with_mocks();

private:
    std::map<std::string, std::shared_ptr<const Segmenter>> segmenters_;
    std::map<std::string, std::shared_ptr<const Inpainter>> inpainters_;
    std::map<std::string, std::shared_ptr<const Generator>> generators_;
};

}  // namespace clickfill
