#pragma once

#include "clickfill/config.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace clickfill::service {

// Server settings. File keys (JSON, all optional):
//
//   bind_address        "127.0.0.1"
//   port                8080
//   workers             2
//   segmenter / inpainter / generator   backend ids
//   remote_url          base URL of a remote backend worker ("remote" ids)
//   open_radius, dilate_radius_remove, dilate_radius_fill_min,
//   dilate_fraction_fill, working_resolution, crop_margin
//   session_ttl_seconds 1800
//   retain_jobs_on_expiry  true
//   persist_dir         directory for content-addressed images/results
//   static_dir          directory served at / (web client build)
//
// Environment overrides: CLICKFILL_BIND ("host" or "host:port") and
// CLICKFILL_PERSIST_DIR.
struct ServiceConfig {
    std::string bind_address = "127.0.0.1";
    int port = 8080;
    std::size_t workers = 2;
    PipelineConfig pipeline;
    std::optional<std::string> remote_url;
    std::chrono::seconds session_ttl{30 * 60};
    bool retain_jobs_on_expiry = true;
    std::optional<std::filesystem::path> persist_dir;
    std::optional<std::filesystem::path> static_dir;
};

// Throws InvalidConfig on unknown keys or wrong types.
ServiceConfig load_service_config(const std::filesystem::path& path);
ServiceConfig parse_service_config(const std::string& json_text);

using EnvLookup = std::function<std::optional<std::string>(const char*)>;
void apply_env_overrides(ServiceConfig& config, const EnvLookup& env);
void apply_env_overrides(ServiceConfig& config);

}  // namespace clickfill::service
