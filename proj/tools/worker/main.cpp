// Serves the deterministic mock backends over the remote-backend transport.
// Useful for exercising `--backend remote` end to end without model weights.

#include "clickfill/backends.hpp"
#include "clickfill/service/http_server.hpp"

#include "CLI11.hpp"

#include <spdlog/spdlog.h>

#include <csignal>

namespace {

clickfill::service::BackendWorker* g_worker = nullptr;

extern "C" void on_signal(int) {
    if (g_worker) g_worker->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"remote backend worker (mock models)"};
    std::string bind = "127.0.0.1";
    int port = 8090;
    app.add_option("--bind", bind);
    app.add_option("--port", port);
    CLI11_PARSE(app, argc, argv);

    try {
        const auto registry = clickfill::BackendRegistry::with_mocks();
        clickfill::service::BackendWorker worker(registry.resolve(clickfill::PipelineConfig{}));
        g_worker = &worker;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        worker.run(bind, port);
        g_worker = nullptr;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 1;
    }
    return 0;
}
