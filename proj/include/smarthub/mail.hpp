#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace smarthub {

struct Email {
    std::vector<std::string> to;
    std::string subject;
    std::string body;

    bool operator==(const Email&) const = default;
};

class MailTransportFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MailTransport {
public:
    virtual ~MailTransport() = default;
    /// Throws MailTransportFailure.
    virtual void send(const Email& email) = 0;
};

/// Records emails in memory instead of sending them. Can be told to fail.
class CaptureTransport final : public MailTransport {
public:
    void send(const Email& email) override;

    std::vector<Email> sent() const;
    std::size_t attempts() const;
    void clear();

    /// The next `n` sends throw; `always` makes every send throw.
    void fail_next(std::size_t n);
    void set_always_fail(bool always);

private:
    mutable std::mutex mutex_;
    std::vector<Email> sent_;
    std::size_t attempts_ = 0;
    std::size_t fail_budget_ = 0;
    bool always_fail_ = false;
};

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds initial_backoff{1000};  // doubled after each failure
};

/// Sends emails on a worker thread so a slow or dead mail server never
/// blocks device handling. Each email gets RetryPolicy::attempts tries.
class MailDispatcher {
public:
    explicit MailDispatcher(std::shared_ptr<MailTransport> transport, RetryPolicy policy = {});
    ~MailDispatcher();

    MailDispatcher(const MailDispatcher&) = delete;
    MailDispatcher& operator=(const MailDispatcher&) = delete;

    void submit(Email email);
    /// Blocks until every submitted email has been delivered or given up on.
    void flush();

    std::size_t delivered() const;
    std::size_t failed() const;

private:
    void run();
    void deliver(const Email& email);

    std::shared_ptr<MailTransport> transport_;
    RetryPolicy policy_;

    mutable std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable idle_;
    std::deque<Email> queue_;
    bool busy_ = false;
    bool stopping_ = false;
    std::size_t delivered_ = 0;
    std::size_t failed_ = 0;
    std::thread worker_;
};

}  // namespace smarthub
