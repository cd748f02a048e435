#include "smarthub/mail.hpp"

#include <spdlog/spdlog.h>

namespace smarthub {

void CaptureTransport::send(const Email& email) {
    std::lock_guard lock(mutex_);
    ++attempts_;
    if (always_fail_) throw MailTransportFailure("capture transport: forced failure");
    if (fail_budget_ > 0) {
        --fail_budget_;
        throw MailTransportFailure("capture transport: forced failure");
    }
    sent_.push_back(email);
}

std::vector<Email> CaptureTransport::sent() const {
    std::lock_guard lock(mutex_);
    return sent_;
}

std::size_t CaptureTransport::attempts() const {
    std::lock_guard lock(mutex_);
    return attempts_;
}

void CaptureTransport::clear() {
    std::lock_guard lock(mutex_);
    sent_.clear();
    attempts_ = 0;
}

void CaptureTransport::fail_next(std::size_t n) {
    std::lock_guard lock(mutex_);
    fail_budget_ = n;
}

void CaptureTransport::set_always_fail(bool always) {
    std::lock_guard lock(mutex_);
    always_fail_ = always;
}

MailDispatcher::MailDispatcher(std::shared_ptr<MailTransport> transport, RetryPolicy policy)
    : transport_(std::move(transport)), policy_(policy) {
    if (!transport_) throw std::invalid_argument("MailDispatcher needs a transport");
    if (policy_.attempts < 1) policy_.attempts = 1;
    worker_ = std::thread([this] { run(); });
}

MailDispatcher::~MailDispatcher() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
    worker_.join();
}

void MailDispatcher::submit(Email email) {
    {
        std::lock_guard lock(mutex_);
        queue_.push_back(std::move(email));
    }
    wake_.notify_one();
}

void MailDispatcher::flush() {
    std::unique_lock lock(mutex_);
    idle_.wait(lock, [this] { return queue_.empty() && !busy_; });
}

std::size_t MailDispatcher::delivered() const {
    std::lock_guard lock(mutex_);
    return delivered_;
}

std::size_t MailDispatcher::failed() const {
    std::lock_guard lock(mutex_);
    return failed_;
}

void MailDispatcher::run() {
    std::unique_lock lock(mutex_);
    for (;;) {
        wake_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
        // Drain what is queued even when stopping, so shutdown does not drop alerts.
        if (queue_.empty() && stopping_) return;
        Email email = std::move(queue_.front());
        queue_.pop_front();
        busy_ = true;
        lock.unlock();
        deliver(email);
        lock.lock();
        busy_ = false;
        if (queue_.empty()) idle_.notify_all();
    }
}

void MailDispatcher::deliver(const Email& email) {
    auto backoff = policy_.initial_backoff;
    for (int attempt = 1; attempt <= policy_.attempts; ++attempt) {
        try {
            transport_->send(email);
            std::lock_guard lock(mutex_);
            ++delivered_;
            return;
        } catch (const MailTransportFailure& e) {
            spdlog::warn("mail: attempt {}/{} for '{}' failed: {}", attempt, policy_.attempts, email.body, e.what());
        }
        if (attempt < policy_.attempts) {
            std::unique_lock lock(mutex_);
            // Shutting down cuts the backoff short but still makes the remaining attempts.
            wake_.wait_for(lock, backoff, [this] { return stopping_; });
            backoff *= 2;
        }
    }
    spdlog::error("mail: giving up on '{}' after {} attempts", email.body, policy_.attempts);
    std::lock_guard lock(mutex_);
    ++failed_;
}

}  // namespace smarthub
