#include "clickfill/remote_backends.hpp"

#include "wire.hpp"

#include "httplib.h"

namespace clickfill {

namespace {

wire::json post(const RemoteEndpoint& endpoint, const char* path, const wire::json& body) {
    httplib::Client client(endpoint.base_url);
    client.set_connection_timeout(endpoint.timeout);
    client.set_read_timeout(endpoint.timeout);
    client.set_write_timeout(endpoint.timeout);

    auto res = client.Post(path, body.dump(), "application/json");
    if (!res) {
        throw Error(ErrorCode::BackendFailure,
                    endpoint.base_url + path + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::BackendFailure,
                    endpoint.base_url + path + " returned HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    try {
        return wire::json::parse(res->body);
    } catch (const wire::json::exception& e) {
        throw Error(ErrorCode::BackendFailure, std::string("malformed response: ") + e.what());
    }
}

Image image_field(const wire::json& j) {
    if (!j.contains("image") || !j["image"].is_string()) {
        throw Error(ErrorCode::BackendFailure, "response lacks an image field");
    }
    try {
        return wire::image_from_b64(j["image"].get<std::string>());
    } catch (const Error& e) {
        throw Error(ErrorCode::BackendFailure, std::string("undecodable image in response: ") + e.what());
    }
}

BackendDescriptor remote_descriptor(BackendRole role, std::string id) {
    return {role, std::move(id), false, false, 8};
}

}  // namespace

RemoteSegmenter::RemoteSegmenter(RemoteEndpoint endpoint, std::string id)
    : endpoint_(std::move(endpoint)), descriptor_(remote_descriptor(BackendRole::Segmenter, std::move(id))) {
    descriptor_.size_multiple = 1;
}

std::vector<SegmentationCandidate> RemoteSegmenter::segment(const Image& image, const ClickPrompt& clicks) const {
    const auto res = post(endpoint_, "/v1/segment", {{"image", wire::image_b64(image)}, {"points", wire::points_to_json(clicks)}});
    if (!res.contains("candidates") || !res["candidates"].is_array()) {
        throw Error(ErrorCode::BackendFailure, "response lacks a candidates array");
    }
    std::vector<SegmentationCandidate> out;
    try {
        for (const auto& c : res["candidates"]) {
            out.push_back({wire::mask_from_b64(c.at("mask").get<std::string>()), c.at("score").get<double>()});
        }
    } catch (const std::exception& e) {
        throw Error(ErrorCode::BackendFailure, std::string("bad candidate: ") + e.what());
    }
    return out;
}

RemoteInpainter::RemoteInpainter(RemoteEndpoint endpoint, std::string id)
    : endpoint_(std::move(endpoint)), descriptor_(remote_descriptor(BackendRole::Inpainter, std::move(id))) {}

Image RemoteInpainter::inpaint(const Image& image, const Mask& mask) const {
    return image_field(post(endpoint_, "/v1/inpaint", {{"image", wire::image_b64(image)}, {"mask", wire::mask_b64(mask)}}));
}

RemoteGenerator::RemoteGenerator(RemoteEndpoint endpoint, std::string id)
    : endpoint_(std::move(endpoint)), descriptor_(remote_descriptor(BackendRole::Generator, std::move(id))) {}

Image RemoteGenerator::generate(const Image& image, const Mask& mask, std::string_view prompt,
                                std::uint64_t seed) const {
    return image_field(post(endpoint_, "/v1/generate",
                            {{"image", wire::image_b64(image)},
                             {"mask", wire::mask_b64(mask)},
                             {"prompt", std::string(prompt)},
                             {"seed", seed}}));
}

void add_remote_backends(BackendRegistry& registry, const RemoteEndpoint& endpoint, const std::string& id) {
    registry.add(std::shared_ptr<const Segmenter>(std::make_shared<RemoteSegmenter>(endpoint, id)));
    registry.add(std::shared_ptr<const Inpainter>(std::make_shared<RemoteInpainter>(endpoint, id)));
    registry.add(std::shared_ptr<const Generator>(std::make_shared<RemoteGenerator>(endpoint, id)));
}

}  // namespace clickfill
