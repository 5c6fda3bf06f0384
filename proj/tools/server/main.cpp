#include "clickfill/error.hpp"
#include "clickfill/remote_backends.hpp"
#include "clickfill/service/http_server.hpp"
#include "clickfill/service/service.hpp"
#include "clickfill/service/service_config.hpp"

#include "CLI11.hpp"

#include <spdlog/spdlog.h>

#include <csignal>
#include <iostream>

namespace {

clickfill::service::HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace clickfill;

    CLI::App app{"HTTP service for click-driven remove / fill / replace"};
    std::string config_path;
    std::optional<std::string> bind;
    std::optional<int> port;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--bind", bind, "bind address (overrides config and CLICKFILL_BIND)");
    app.add_option("--port", port, "listen port");
    CLI11_PARSE(app, argc, argv);

    try {
        service::ServiceConfig config =
            config_path.empty() ? service::ServiceConfig{} : service::load_service_config(config_path);
        service::apply_env_overrides(config);
        if (bind) config.bind_address = *bind;
        if (port) config.port = *port;

        BackendRegistry registry = BackendRegistry::with_mocks();
        if (config.remote_url) add_remote_backends(registry, RemoteEndpoint{*config.remote_url});

        service::ServiceCore core(config, std::move(registry));
        service::HttpServer server(core);
        g_server = &server;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        server.run(config.bind_address, config.port);
        g_server = nullptr;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 1;
    }
    return 0;
}
