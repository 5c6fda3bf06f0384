#include "clickfill/service/state.hpp"

#include <sodium.h>

#include <stdexcept>

namespace clickfill::service {

int http_status(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DecodeError:
    case ErrorCode::EmptyImage:
    case ErrorCode::ChannelMismatch:
        return 400;
    case ErrorCode::DimensionTooLarge:
        return 413;
    case ErrorCode::NoObjectFound:
        return 409;
    case ErrorCode::PointOutOfBounds:
    case ErrorCode::InvalidPrompt:
    case ErrorCode::InvalidConfig:
    case ErrorCode::EmptyPrompt:
    case ErrorCode::EmptyMask:
    case ErrorCode::BadMask:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnknownBackend:
    case ErrorCode::EmptyCandidates:
    case ErrorCode::EmptyResult:
    case ErrorCode::ObjectCoversImage:
    case ErrorCode::RegionOutOfBounds:
        return 422;
    case ErrorCode::BackendFailure:
        return 502;
    }
    return 500;
}

std::string random_id() {
    static const bool ready = sodium_init() >= 0;
    if (!ready) throw std::runtime_error("libsodium failed to initialise");
    unsigned char raw[16];
    randombytes_buf(raw, sizeof raw);
    char hex[sizeof raw * 2 + 1];
    sodium_bin2hex(hex, sizeof hex, raw, sizeof raw);
    return hex;
}

SessionStore::SessionStore(std::chrono::milliseconds ttl, ClockFn clock) : ttl_(ttl), clock_(std::move(clock)) {
    if (!clock_) clock_ = [] { return Clock::now(); };
}

std::shared_ptr<Session> SessionStore::create(Image image) {
    const auto now = clock_();
    auto session = std::make_shared<Session>(random_id(), std::move(image), now);
    std::lock_guard lock(mutex_);
    purge_locked(now);
    sessions_.emplace(session->id, session);
    return session;
}

std::shared_ptr<Session> SessionStore::get(const std::string& id) {
    const auto now = clock_();
    std::lock_guard lock(mutex_);
    purge_locked(now);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        throw ServiceError(404, "UnknownSession", "no live session '" + id + "'");
    }
    std::lock_guard session_lock(it->second->mutex);
    it->second->last_used = now;
    return it->second;
}

bool SessionStore::alive(const std::string& id) {
    std::lock_guard lock(mutex_);
    purge_locked(clock_());
    return sessions_.contains(id);
}

std::size_t SessionStore::size() {
    std::lock_guard lock(mutex_);
    purge_locked(clock_());
    return sessions_.size();
}

void SessionStore::purge_locked(Clock::time_point now) {
    std::erase_if(sessions_, [&](const auto& entry) {
        std::lock_guard session_lock(entry.second->mutex);
        return now - entry.second->last_used >= ttl_;
    });
}

std::string_view to_string(JobStatus status) noexcept {
    switch (status) {
    case JobStatus::Queued: return "queued";
    case JobStatus::Running: return "running";
    case JobStatus::Done: return "done";
    case JobStatus::Failed: return "failed";
    }
    return "queued";
}

std::string JobTable::create(std::string session_id, Mode mode, PipelineConfig config) {
    JobView view;
    view.id = random_id();
    view.session_id = std::move(session_id);
    view.mode = mode;
    view.config = std::move(config);
    std::lock_guard lock(mutex_);
    const std::string id = view.id;
    jobs_.emplace(id, Record{std::move(view)});
    return id;
}

JobView JobTable::view(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw ServiceError(404, "UnknownJob", "no job '" + id + "'");
    return it->second.view;
}

bool JobTable::advance(const std::string& id, JobStatus from, JobStatus to,
                       const std::function<void(JobView&)>& apply) {
    {
        std::lock_guard lock(mutex_);
        auto it = jobs_.find(id);
        if (it == jobs_.end() || it->second.view.status != from) return false;
        if (apply) apply(it->second.view);
        it->second.view.status = to;
    }
    changed_.notify_all();
    return true;
}

bool JobTable::start(const std::string& id) { return advance(id, JobStatus::Queued, JobStatus::Running, {}); }

bool JobTable::finish(const std::string& id, PipelineResult result) {
    auto shared = std::make_shared<const PipelineResult>(std::move(result));
    return advance(id, JobStatus::Running, JobStatus::Done, [&](JobView& v) { v.result = shared; });
}

bool JobTable::fail(const std::string& id, JobError error) {
    return advance(id, JobStatus::Running, JobStatus::Failed, [&](JobView& v) { v.error = std::move(error); });
}

JobView JobTable::wait(const std::string& id, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    auto terminal = [&] {
        auto it = jobs_.find(id);
        return it == jobs_.end() || it->second.view.status == JobStatus::Done ||
               it->second.view.status == JobStatus::Failed;
    };
    changed_.wait_for(lock, timeout, terminal);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) throw ServiceError(404, "UnknownJob", "no job '" + id + "'");
    return it->second.view;
}

}  // namespace clickfill::service
