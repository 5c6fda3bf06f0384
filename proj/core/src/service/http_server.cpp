#include "clickfill/service/http_server.hpp"

#include "clickfill/error.hpp"

#include "../wire.hpp"

#include "httplib.h"

#include <spdlog/spdlog.h>

#include <stdexcept>
#include <thread>

namespace clickfill::service {

namespace {

using wire::json;

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view name, const std::string& message) {
    send_json(res, status, {{"error", name}, {"message", message}});
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
    return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const ServiceError& e) {
            send_error(res, e.status(), e.name(), e.what());
        } catch (const Error& e) {
            send_error(res, http_status(e.code()), e.name(), e.what());
        } catch (const json::exception& e) {
            send_error(res, 400, "BadRequest", e.what());
        } catch (const std::exception& e) {
            spdlog::error("{} {} failed: {}", req.method, req.path, e.what());
            send_error(res, 500, "InternalError", e.what());
        }
    };
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    json body = json::parse(req.body);
    if (!body.is_object()) throw ServiceError(400, "BadRequest", "request body must be a JSON object");
    return body;
}

json job_to_json(const JobView& job) {
    json out = {{"job_id", job.id},
                {"session_id", job.session_id},
                {"mode", to_string(job.mode)},
                {"status", to_string(job.status)},
                {"config", wire::config_to_json(job.config)}};
    if (job.error) out["error"] = {{"error", job.error->name}, {"message", job.error->message}};
    if (job.result) {
        const auto& r = *job.result;
        out["result"] = {{"width", r.output.width()},
                         {"height", r.output.height()},
                         {"image", wire::image_b64(r.output)},
                         {"edit_mask", wire::mask_b64(r.edit_mask)},
                         {"object_mask", wire::mask_b64(r.object_mask)},
                         {"window", wire::window_to_json(r.window)},
                         {"timings", wire::timings_to_json(r.timings)}};
    }
    return out;
}

ExecuteRequest execute_from_json(const json& body, const PipelineConfig& defaults) {
    ExecuteRequest req;
    if (!body.contains("mode") || !body["mode"].is_string()) {
        throw ServiceError(422, "BadRequest", "mode is required");
    }
    req.mode = parse_mode(body["mode"].get<std::string>());
    if (body.contains("prompt") && !body["prompt"].is_null()) req.prompt = body["prompt"].get<std::string>();
    if (body.contains("mask_index") && !body["mask_index"].is_null()) {
        req.mask_index = body["mask_index"].get<std::size_t>();
    }
    if (body.contains("mask_png") && !body["mask_png"].is_null()) {
        try {
            req.mask = wire::mask_from_b64(body["mask_png"].get<std::string>());
        } catch (const Error& e) {
            throw Error(ErrorCode::BadMask, e.what());
        }
    }
    if (body.contains("config") && !body["config"].is_null()) {
        PipelineConfig cfg = defaults;
        wire::apply_config_overrides(cfg, body["config"]);
        req.config = cfg;
    }
    return req;
}

// Owns one httplib server and the thread serving it.
struct Host {
    httplib::Server server;
    std::thread thread;

    int bind(const std::string& host, int port) {
        const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
        if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
        return bound;
    }

    int start(const std::string& host, int port) {
        const int bound = bind(host, port);
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
        return bound;
    }

    void run(const std::string& host, int port) {
        const int bound = bind(host, port);
        spdlog::info("listening on {}:{}", host, bound);
        server.listen_after_bind();
    }

    void stop() {
        server.stop();
        if (thread.joinable()) thread.join();
    }

    ~Host() { stop(); }
};

}  // namespace

struct HttpServer::Impl {
    ServiceCore& core;
    Host host;

    explicit Impl(ServiceCore& c) : core(c) { routes(); }

    void routes() {
        auto& s = host.server;
        s.set_payload_max_length(256 * 1024 * 1024);
        s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
        s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
            res.status = 204;
        });

        s.Get("/api/v1/health", guarded([this](const httplib::Request&, httplib::Response& res) {
                  json backends = json::array();
                  for (const auto& d : core.registry().descriptors()) {
                      backends.push_back({{"role", to_string(d.role)},
                                          {"id", d.id},
                                          {"deterministic", d.deterministic},
                                          {"serial", d.serial}});
                  }
                  send_json(res, 200, {{"status", "ok"}, {"backends", backends},
                                       {"defaults", wire::config_to_json(core.default_config())}});
              }));

        s.Post("/api/v1/images", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   std::string body = req.body;
                   if (req.is_multipart_form_data()) {
                       if (!req.has_file("image")) throw ServiceError(400, "DecodeError", "multipart upload needs an 'image' part");
                       body = req.get_file_value("image").content;
                   }
                   const auto* bytes = reinterpret_cast<const std::uint8_t*>(body.data());
                   const auto up = core.upload_image({bytes, body.size()});
                   send_json(res, 201, {{"session_id", up.session_id}, {"width", up.extent.width},
                                        {"height", up.extent.height}});
               }));

        s.Post("/api/v1/sessions/:sid/segment", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const json body = parse_body(req);
                   if (!body.contains("points")) throw ServiceError(422, "BadRequest", "points are required");
                   const ClickPrompt clicks = wire::points_from_json(body["points"]);
                   const auto candidates = core.segment(req.path_params.at("sid"), clicks);
                   json arr = json::array();
                   for (const auto& c : candidates) {
                       arr.push_back({{"index", c.index},
                                      {"score", c.score},
                                      {"area", c.area},
                                      {"bbox", wire::bbox_to_json(c.bbox)},
                                      {"mask", wire::mask_b64(c.mask)}});
                   }
                   send_json(res, 200, {{"candidates", arr}});
               }));

        s.Post("/api/v1/sessions/:sid/jobs", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const ExecuteRequest exec = execute_from_json(parse_body(req), core.default_config());
                   const std::string id = core.execute(req.path_params.at("sid"), exec);
                   send_json(res, 202, {{"job_id", id}, {"status", "queued"}});
               }));

        s.Get("/api/v1/jobs/:jid", guarded([this](const httplib::Request& req, httplib::Response& res) {
                  send_json(res, 200, job_to_json(core.job(req.path_params.at("jid"))));
              }));

        if (core.config().static_dir && !s.set_mount_point("/", core.config().static_dir->string())) {
            spdlog::warn("static_dir {} not found; web client not served", core.config().static_dir->string());
        }
    }
};

HttpServer::HttpServer(ServiceCore& core) : impl_(std::make_unique<Impl>(core)) {}
HttpServer::~HttpServer() = default;
int HttpServer::start(const std::string& host, int port) { return impl_->host.start(host, port); }
void HttpServer::run(const std::string& host, int port) { impl_->host.run(host, port); }
void HttpServer::stop() { impl_->host.stop(); }

struct BackendWorker::Impl {
    BackendSet backends;
    Host host;

    explicit Impl(BackendSet b) : backends(std::move(b)) { routes(); }

    static Image image_arg(const json& body) { return wire::image_from_b64(body.at("image").get<std::string>()); }
    static Mask mask_arg(const json& body) { return wire::mask_from_b64(body.at("mask").get<std::string>()); }

    void routes() {
        auto& s = host.server;
        s.set_payload_max_length(256 * 1024 * 1024);

        s.Post("/v1/segment", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const json body = parse_body(req);
                   const Image image = image_arg(body);
                   const ClickPrompt clicks = wire::points_from_json(body.at("points"));
                   clicks.validate(image.extent());
                   json arr = json::array();
                   for (const auto& c : backends.segmenter->segment(image, clicks)) {
                       arr.push_back({{"mask", wire::mask_b64(c.mask)}, {"score", c.score}});
                   }
                   send_json(res, 200, {{"candidates", arr}});
               }));

        s.Post("/v1/inpaint", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const json body = parse_body(req);
                   const Image out = inpaint(*backends.inpainter, image_arg(body), mask_arg(body));
                   send_json(res, 200, {{"image", wire::image_b64(out)}});
               }));

        s.Post("/v1/generate", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const json body = parse_body(req);
                   const Image out = generate(*backends.generator, image_arg(body), mask_arg(body),
                                              body.at("prompt").get<std::string>(), body.at("seed").get<std::uint64_t>());
                   send_json(res, 200, {{"image", wire::image_b64(out)}});
               }));
    }
};

BackendWorker::BackendWorker(BackendSet backends) : impl_(std::make_unique<Impl>(std::move(backends))) {}
BackendWorker::~BackendWorker() = default;
int BackendWorker::start(const std::string& host, int port) { return impl_->host.start(host, port); }
void BackendWorker::run(const std::string& host, int port) { impl_->host.run(host, port); }
void BackendWorker::stop() { impl_->host.stop(); }

}  // namespace clickfill::service
