#pragma once

#include "clickfill/backends.hpp"
#include "clickfill/pipeline.hpp"
#include "clickfill/service/service_config.hpp"
#include "clickfill/service/state.hpp"
#include "clickfill/service/worker_pool.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clickfill::service {

struct UploadResult {
    std::string session_id;
    Extent extent;
};

struct CandidateSummary {
    std::size_t index = 0;
    double score = 0.0;
    std::size_t area = 0;
    BBox bbox;
    Mask mask;
};

struct ExecuteRequest {
    Mode mode = Mode::Remove;
    // At most one of these. With neither, the session's selected mask is used.
    std::optional<std::size_t> mask_index;
    std::optional<Mask> mask;
    std::string prompt;
    // Defaults to ServiceCore::default_config().
    std::optional<PipelineConfig> config;
};

// Transport-independent service logic: sessions, segmentation and the async
// job queue. Every method is safe to call concurrently.
class ServiceCore {
public:
    ServiceCore(ServiceConfig config, BackendRegistry registry, ClockFn clock = {});
    ~ServiceCore();

    // Throws Error (DecodeError, DimensionTooLarge, ...).
    UploadResult upload_image(std::span<const std::uint8_t> encoded);

    // Stores the candidates in the session and selects the best-scoring one.
    std::vector<CandidateSummary> segment(const std::string& session_id, const ClickPrompt& clicks);

    // Validates synchronously, then enqueues. Returns the job id.
    std::string execute(const std::string& session_id, const ExecuteRequest& request);

    JobView job(const std::string& job_id) const { return jobs_.view(job_id); }
    JobView wait(const std::string& job_id, std::chrono::milliseconds timeout) const {
        return jobs_.wait(job_id, timeout);
    }

    const PipelineConfig& default_config() const noexcept { return config_.pipeline; }
    const ServiceConfig& config() const noexcept { return config_; }
    const BackendRegistry& registry() const noexcept { return registry_; }
    SessionStore& sessions() noexcept { return sessions_; }

private:
    void run_job(const std::string& job_id, std::shared_ptr<Session> session, Mask object, std::string prompt);
    void persist(const char* kind, const Image& image) const;

    ServiceConfig config_;
    BackendRegistry registry_;
    SessionStore sessions_;
    JobTable jobs_;
    // Last member: destroyed first so in-flight jobs finish while state is alive.
    std::unique_ptr<WorkerPool> pool_;
};

}  // namespace clickfill::service
