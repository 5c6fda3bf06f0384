#include "clickfill/service/service_config.hpp"

#include "clickfill/codec.hpp"
#include "clickfill/error.hpp"

#include "../wire.hpp"

#include <cstdlib>

namespace clickfill::service {

ServiceConfig parse_service_config(const std::string& json_text) {
    ServiceConfig cfg;
    wire::json j;
    try {
        j = wire::json::parse(json_text);
    } catch (const wire::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");

    wire::json pipeline = wire::json::object();
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "bind_address") cfg.bind_address = value.get<std::string>();
            else if (key == "port") cfg.port = value.get<int>();
            else if (key == "workers") cfg.workers = value.get<std::size_t>();
            else if (key == "segmenter") cfg.pipeline.segmenter = value.get<std::string>();
            else if (key == "inpainter") cfg.pipeline.inpainter = value.get<std::string>();
            else if (key == "generator") cfg.pipeline.generator = value.get<std::string>();
            else if (key == "remote_url") cfg.remote_url = value.get<std::string>();
            else if (key == "session_ttl_seconds") cfg.session_ttl = std::chrono::seconds(value.get<long>());
            else if (key == "retain_jobs_on_expiry") cfg.retain_jobs_on_expiry = value.get<bool>();
            else if (key == "persist_dir") cfg.persist_dir = value.get<std::string>();
            else if (key == "static_dir") cfg.static_dir = value.get<std::string>();
            else pipeline[key] = value;
        }
    } catch (const wire::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, e.what());
    }
    wire::apply_config_overrides(cfg.pipeline, pipeline);

    if (cfg.port < 0 || cfg.port > 65535) throw Error(ErrorCode::InvalidConfig, "port out of range");
    if (cfg.workers == 0) throw Error(ErrorCode::InvalidConfig, "workers must be >= 1");
    if (cfg.session_ttl.count() <= 0) throw Error(ErrorCode::InvalidConfig, "session_ttl_seconds must be > 0");
    return cfg;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
    const Bytes raw = read_file(path);
    return parse_service_config(std::string(raw.begin(), raw.end()));
}

void apply_env_overrides(ServiceConfig& config, const EnvLookup& env) {
    if (auto bind = env("CLICKFILL_BIND"); bind && !bind->empty()) {
        const auto colon = bind->rfind(':');
        if (colon == std::string::npos) {
            config.bind_address = *bind;
        } else {
            config.bind_address = bind->substr(0, colon);
            try {
                config.port = std::stoi(bind->substr(colon + 1));
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidConfig, "CLICKFILL_BIND has a bad port: " + *bind);
            }
        }
    }
    if (auto dir = env("CLICKFILL_PERSIST_DIR"); dir && !dir->empty()) {
        config.persist_dir = *dir;
    }
}

void apply_env_overrides(ServiceConfig& config) {
    apply_env_overrides(config, [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (!v) return std::nullopt;
        return std::string(v);
    });
}

}  // namespace clickfill::service
