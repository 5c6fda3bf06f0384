#pragma once

#include "clickfill/backends.hpp"
#include "clickfill/service/service.hpp"

#include <memory>
#include <string>

namespace clickfill::service {

// HTTP/JSON front end over ServiceCore.
//
//   GET  /api/v1/health
//   POST /api/v1/images                     raw PNG/JPEG body (or multipart "image")
//        201 {"session_id", "width", "height"}
//   POST /api/v1/sessions/{sid}/segment     {"points": [{"x", "y", "label"}]}
//        200 {"candidates": [{"index", "score", "area", "bbox", "mask"}]}
//   POST /api/v1/sessions/{sid}/jobs        {"mode", "mask_index" | "mask_png", "prompt", "config"}
//        202 {"job_id", "status"}
//   GET  /api/v1/jobs/{jid}
//        200 {"job_id", "session_id", "mode", "status", "error"?, "result"?}
//
// Errors are {"error": name, "message": text} with the matching status.
class HttpServer {
public:
    explicit HttpServer(ServiceCore& core);
    ~HttpServer();

    // Binds and serves on a background thread. Port 0 picks a free port.
    // Returns the bound port; throws std::runtime_error when binding fails.
    int start(const std::string& host, int port);
    // Serves on the calling thread until stop().
    void run(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Hosts a BackendSet behind the remote-backend transport (see
// remote_backends.hpp), so one process can run models for another.
class BackendWorker {
public:
    explicit BackendWorker(BackendSet backends);
    ~BackendWorker();

    int start(const std::string& host, int port);
    void run(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace clickfill::service
