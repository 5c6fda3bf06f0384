#include "clickfill/service/worker_pool.hpp"

#include <spdlog/spdlog.h>

namespace clickfill::service {

WorkerPool::WorkerPool(std::size_t threads) {
    if (threads == 0) threads = 1;
    threads_.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) {
        threads_.emplace_back([this](std::stop_token stop) { loop(stop); });
    }
}

WorkerPool::~WorkerPool() {
    for (auto& t : threads_) t.request_stop();
    ready_.notify_all();
    threads_.clear();
}

void WorkerPool::post(std::function<void()> task) {
    {
        std::lock_guard lock(mutex_);
        queue_.push_back(std::move(task));
    }
    ready_.notify_one();
}

void WorkerPool::loop(std::stop_token stop) {
    for (;;) {
        std::function<void()> task;
        {
            std::unique_lock lock(mutex_);
            ready_.wait(lock, stop, [this] { return !queue_.empty(); });
            if (queue_.empty()) return;  // stop requested and drained
            task = std::move(queue_.front());
            queue_.pop_front();
        }
        try {
            task();
        } catch (const std::exception& e) {
            spdlog::error("worker task threw: {}", e.what());
        }
    }
}

}  // namespace clickfill::service
