#pragma once

#include "smarthub/alarm.hpp"
#include "smarthub/automation.hpp"
#include "smarthub/clock.hpp"
#include "smarthub/config.hpp"
#include "smarthub/mail.hpp"
#include "smarthub/packet.hpp"
#include "smarthub/persistence.hpp"

#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace smarthub {

struct HubOptions {
    std::filesystem::path state_path = "hub_state.txt";
    std::vector<DeviceSpec> roster = default_roster();
    AlarmSettings alarm;
    AutomationRules automation;
    RetryPolicy mail_retry;

    static HubOptions from_config(const HubConfig& cfg);
};

struct TickReport {
    std::vector<AutomationAction> actions;
    bool siren_auto_off = false;
};

/// The micro web-server core, minus HTTP. Every request is
///   parse -> authenticate -> act -> respond
/// with a fresh 404 response that only a successful path overwrites.
///
/// All state (credential, registry, siren latch, automation memory) sits
/// behind one mutex. Mail is dispatched and state is persisted after the
/// mutex is released.
class Hub {
public:
    /// Boots from options.state_path. Throws CorruptStateFile.
    Hub(HubOptions options, std::shared_ptr<const Clock> clock, std::shared_ptr<MailTransport> mail);
    ~Hub();

    Hub(const Hub&) = delete;
    Hub& operator=(const Hub&) = delete;

    ResponsePacket handle_command(std::string_view raw);

    /// Status_All without a credential check, for internal callers.
    ResponsePacket status() const;

    bool check_password(std::string_view attempt) const;

    /// Sensor injection. Throws DeviceError (UnknownTarget, NotASensor, NotRepresentable).
    void set_sensor(std::string_view sensor_id, std::int64_t value);
    /// Hazard interrupt: siren latched before this returns, email queued.
    /// Throws EmptyLocation.
    void raise_alarm(HazardKind kind, std::string location);

    /// One evaluation of siren auto-off and, when auto mode is on, the
    /// automation rules.
    TickReport tick();

    Registry registry() const;
    HubState state() const;
    SirenLatch siren_latch() const;
    std::vector<AlarmEvent> alarm_history() const;
    const Clock& clock() const noexcept { return *clock_; }
    bool booted_fresh() const noexcept { return booted_fresh_; }

    /// Blocks until queued alarm emails are sent or abandoned.
    void flush_mail();

    /// Message of the last failed persist, cleared by the next success.
    std::optional<std::string> last_persist_error() const;

private:
    void persist_copy(HubState copy, std::uint64_t seq);

    HubOptions options_;
    std::shared_ptr<const Clock> clock_;
    MailDispatcher mail_;

    mutable std::mutex gate_;
    HubState state_;
    AlarmEngine alarm_;
    AutomationEngine automation_;
    std::uint64_t mutation_seq_ = 0;
    bool booted_fresh_ = false;

    mutable std::mutex persist_mutex_;
    std::uint64_t persisted_seq_ = 0;
    std::optional<std::string> persist_error_;
};

/// Calls `fn` every `period` on its own thread until destroyed.
class Ticker {
public:
    Ticker(Seconds period, std::function<void()> fn);
    ~Ticker();

    Ticker(const Ticker&) = delete;
    Ticker& operator=(const Ticker&) = delete;

private:
    std::mutex mutex_;
    std::condition_variable stop_cv_;
    bool stopping_ = false;
    std::thread thread_;
};

}  // namespace smarthub
