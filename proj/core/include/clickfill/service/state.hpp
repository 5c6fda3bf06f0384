#pragma once

#include "clickfill/backends.hpp"
#include "clickfill/config.hpp"
#include "clickfill/error.hpp"
#include "clickfill/image.hpp"
#include "clickfill/pipeline.hpp"

#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clickfill::service {

using Clock = std::chrono::steady_clock;
using ClockFn = std::function<Clock::time_point()>;

// Failure carrying its HTTP status and wire name.
class ServiceError : public std::runtime_error {
public:
    ServiceError(int status, std::string name, const std::string& message)
        : std::runtime_error(message), status_(status), name_(std::move(name)) {}

    int status() const noexcept { return status_; }
    const std::string& name() const noexcept { return name_; }

private:
    int status_;
    std::string name_;
};

int http_status(ErrorCode code) noexcept;

std::string random_id();

struct Session {
    Session(std::string id_, Image image_, Clock::time_point now)
        : id(std::move(id_)), image(std::move(image_)), created_at(now), last_used(now) {}

    std::string id;
    Image image;
    Clock::time_point created_at;

    // Guarded by `mutex`.
    mutable std::mutex mutex;
    std::vector<SegmentationCandidate> candidates;
    std::optional<Mask> selected_mask;
    Clock::time_point last_used;
};

// In-memory sessions with an idle TTL. Expired sessions are unreachable
// and get purged lazily.
class SessionStore {
public:
    SessionStore(std::chrono::milliseconds ttl, ClockFn clock);

    std::shared_ptr<Session> create(Image image);
    // Refreshes last_used. Throws ServiceError 404 UnknownSession.
    std::shared_ptr<Session> get(const std::string& id);
    bool alive(const std::string& id);
    std::size_t size();

private:
    void purge_locked(Clock::time_point now);

    std::chrono::milliseconds ttl_;
    ClockFn clock_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

enum class JobStatus { Queued, Running, Done, Failed };

std::string_view to_string(JobStatus status) noexcept;

struct JobError {
    std::string name;
    std::string message;
};

struct JobView {
    std::string id;
    std::string session_id;
    Mode mode = Mode::Remove;
    JobStatus status = JobStatus::Queued;
    PipelineConfig config;
    std::shared_ptr<const PipelineResult> result;
    std::optional<JobError> error;
};

// Jobs move queued -> running -> done|failed; any other transition is refused.
class JobTable {
public:
    std::string create(std::string session_id, Mode mode, PipelineConfig config);

    // Throws ServiceError 404 UnknownJob.
    JobView view(const std::string& id) const;

    // Each returns false (and changes nothing) when the job is not in the
    // required prior state.
    bool start(const std::string& id);
    bool finish(const std::string& id, PipelineResult result);
    bool fail(const std::string& id, JobError error);

    // Blocks until the job is done or failed, or the timeout elapses.
    JobView wait(const std::string& id, std::chrono::milliseconds timeout) const;

private:
    struct Record {
        JobView view;
    };

    bool advance(const std::string& id, JobStatus from, JobStatus to, const std::function<void(JobView&)>& apply);

    mutable std::mutex mutex_;
    mutable std::condition_variable changed_;
    std::map<std::string, Record> jobs_;
};

}  // namespace clickfill::service
