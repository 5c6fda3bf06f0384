#include "clickfill/service/service.hpp"

#include "clickfill/codec.hpp"
#include "clickfill/error.hpp"
#include "clickfill/mask_ops.hpp"

#include <spdlog/spdlog.h>

#include <filesystem>

namespace clickfill::service {

ServiceCore::ServiceCore(ServiceConfig config, BackendRegistry registry, ClockFn clock)
    : config_(std::move(config)),
      registry_(std::move(registry)),
      sessions_(std::chrono::duration_cast<std::chrono::milliseconds>(config_.session_ttl), std::move(clock)),
      pool_(std::make_unique<WorkerPool>(config_.workers)) {
    config_.pipeline.validate();
    registry_.resolve(config_.pipeline);  // fail fast on unknown default ids
}

ServiceCore::~ServiceCore() { pool_.reset(); }

UploadResult ServiceCore::upload_image(std::span<const std::uint8_t> encoded) {
    Image image = decode_image(encoded);
    persist("images", image);
    const Extent extent = image.extent();
    auto session = sessions_.create(std::move(image));
    spdlog::info("session {} created for {}x{} image", session->id, extent.width, extent.height);
    return {session->id, extent};
}

std::vector<CandidateSummary> ServiceCore::segment(const std::string& session_id, const ClickPrompt& clicks) {
    auto session = sessions_.get(session_id);
    const auto segmenter = registry_.segmenter(config_.pipeline.segmenter);
    auto candidates = clickfill::segment(*segmenter, session->image, clicks);

    std::vector<CandidateSummary> out;
    out.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        out.push_back({i, c.score, c.mask.count(), *bbox(c.mask), c.mask});
    }

    std::lock_guard lock(session->mutex);
    session->selected_mask = select_mask(candidates, MaskPolicy::highest_score());
    session->candidates = std::move(candidates);
    return out;
}

std::string ServiceCore::execute(const std::string& session_id, const ExecuteRequest& request) {
    auto session = sessions_.get(session_id);

    PipelineConfig config = request.config.value_or(config_.pipeline);
    config.mode = request.mode;
    config.validate();
    if (request.mode != Mode::Remove && request.prompt.empty()) {
        throw ServiceError(422, "MissingPrompt", std::string(to_string(request.mode)) + " requires a prompt");
    }
    registry_.resolve(config);

    if (request.mask && request.mask_index) {
        throw Error(ErrorCode::BadMask, "give either mask_index or mask_png, not both");
    }

    Mask object = [&] {
        std::lock_guard lock(session->mutex);
        if (request.mask) {
            if (request.mask->extent() != session->image.extent()) {
                throw Error(ErrorCode::BadMask, "mask dimensions do not match the session image");
            }
            return *request.mask;
        }
        if (request.mask_index) {
            return select_mask(session->candidates, MaskPolicy::at(*request.mask_index));
        }
        if (!session->selected_mask) {
            throw Error(ErrorCode::BadMask, "no mask selected; segment first or send mask_png");
        }
        return *session->selected_mask;
    }();
    if (object.empty()) {
        throw Error(ErrorCode::EmptyMask, "selected mask has no set pixels");
    }
    {
        std::lock_guard lock(session->mutex);
        session->selected_mask = object;
    }

    const std::string job_id = jobs_.create(session_id, request.mode, config);
    pool_->post([this, job_id, session, object = std::move(object), prompt = request.prompt]() mutable {
        run_job(job_id, std::move(session), std::move(object), std::move(prompt));
    });
    return job_id;
}

void ServiceCore::run_job(const std::string& job_id, std::shared_ptr<Session> session, Mask object,
                          std::string prompt) {
    if (!jobs_.start(job_id)) return;
    const JobView view = jobs_.view(job_id);

    if (!config_.retain_jobs_on_expiry && !sessions_.alive(session->id)) {
        jobs_.fail(job_id, {"SessionExpired", "session expired before the job ran"});
        return;
    }
    try {
        const Pipeline pipeline(registry_.resolve(view.config));
        PipelineResult result = pipeline.run(view.mode, session->image, object, prompt, view.config);
        persist("results", result.output);
        jobs_.finish(job_id, std::move(result));
    } catch (const Error& e) {
        jobs_.fail(job_id, {std::string(e.name()), e.what()});
    } catch (const std::exception& e) {
        jobs_.fail(job_id, {"InternalError", e.what()});
    }
}

void ServiceCore::persist(const char* kind, const Image& image) const {
    if (!config_.persist_dir) return;
    try {
        const Bytes png = encode_png(image);
        const auto dir = *config_.persist_dir / kind;
        std::filesystem::create_directories(dir);
        const auto path = dir / (sha256_hex(png) + ".png");
        if (!std::filesystem::exists(path)) write_file(path, png);
    } catch (const std::exception& e) {
        spdlog::warn("could not persist {}: {}", kind, e.what());
    }
}

}  // namespace clickfill::service
