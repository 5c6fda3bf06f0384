#pragma once

#include "clickfill/backends.hpp"

#include <chrono>
#include <string>

namespace clickfill {

// Client side of the remote-backend transport. Each call is one JSON POST:
//
//   POST /v1/segment   {"image": b64png, "points": [{"x","y","label"}]}
//                      -> {"candidates": [{"mask": b64png, "score": float}]}
//   POST /v1/inpaint   {"image": b64png, "mask": b64png}          -> {"image": b64png}
//   POST /v1/generate  {"image", "mask", "prompt": str, "seed": u64} -> {"image": b64png}
//
// Masks are single-channel PNG (0/255). Transport or protocol failures
// surface as BackendFailure.
struct RemoteEndpoint {
    std::string base_url;  // e.g. "http://127.0.0.1:8090"
    std::chrono::seconds timeout{300};
};

class RemoteSegmenter final : public Segmenter {
public:
    RemoteSegmenter(RemoteEndpoint endpoint, std::string id = "remote");
    const BackendDescriptor& descriptor() const override { return descriptor_; }
    std::vector<SegmentationCandidate> segment(const Image& image, const ClickPrompt& clicks) const override;

private:
    RemoteEndpoint endpoint_;
    BackendDescriptor descriptor_;
};

class RemoteInpainter final : public Inpainter {
public:
    RemoteInpainter(RemoteEndpoint endpoint, std::string id = "remote");
    const BackendDescriptor& descriptor() const override { return descriptor_; }
    Image inpaint(const Image& image, const Mask& mask) const override;

private:
    RemoteEndpoint endpoint_;
    BackendDescriptor descriptor_;
};

class RemoteGenerator final : public Generator {
public:
    RemoteGenerator(RemoteEndpoint endpoint, std::string id = "remote");
    const BackendDescriptor& descriptor() const override { return descriptor_; }
    Image generate(const Image& image, const Mask& mask, std::string_view prompt,
                   std::uint64_t seed) const override;

private:
    RemoteEndpoint endpoint_;
    BackendDescriptor descriptor_;
};

// Registers all three remote roles under `id`.
void add_remote_backends(BackendRegistry& registry, const RemoteEndpoint& endpoint, const std::string& id = "remote");

}  // namespace clickfill
