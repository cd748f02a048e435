#pragma once

#include "smarthub/automation.hpp"
#include "smarthub/clock.hpp"
#include "smarthub/device.hpp"
#include "smarthub/mail.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smarthub {

enum class HazardKind { Fire, Smoke, Gas, Intrusion };

std::string_view to_string(HazardKind kind);
std::optional<HazardKind> parse_hazard_kind(std::string_view name);

inline constexpr std::string_view kAlertSubject = "Smart Home Alert";

class EmptyLocation : public std::invalid_argument {
public:
    EmptyLocation() : std::invalid_argument("alarm event location is empty") {}
};

struct AlarmEvent {
    HazardKind kind = HazardKind::Fire;
    std::string location;
    TimePoint at{};
};

/// Subject "Smart Home Alert", body "<Kind> Detected in the <Location>".
/// Throws EmptyLocation.
Email compose_email(const AlarmEvent& ev, std::vector<std::string> recipients = {});

struct SirenLatch {
    bool on = false;
    TimePoint since{};
    Seconds auto_off_after{300.0};
};

/// TurnOff once the latch has been on for auto_off_after, Hold otherwise.
Command maybe_auto_off(const SirenLatch& latch, TimePoint now);

struct AlarmSettings {
    Seconds auto_off_after{300.0};
    Seconds debounce{30.0};
    std::vector<std::string> recipients;
};

/// Siren latch plus email debouncing. Works on a registry the caller has
/// exclusive access to; emails are returned, not sent, so the caller can
/// dispatch them after releasing its lock.
class AlarmEngine {
public:
    explicit AlarmEngine(AlarmSettings settings = {});

    /// Latches the siren on and returns the email to send, or nullopt when
    /// the same kind/location already emailed within the debounce window.
    /// Throws EmptyLocation before touching anything.
    std::optional<Email> on_event(const AlarmEvent& ev, Registry& reg);

    /// Applies auto-off. Returns true when the siren was switched off.
    bool tick(Registry& reg, TimePoint now);

    /// Clears the latch and the debounce memory and switches the siren off.
    void manual_release(Registry& reg);

    /// Re-latch after a restart that found the siren on.
    void rearm(TimePoint now);

    const SirenLatch& latch() const noexcept { return latch_; }
    const AlarmSettings& settings() const noexcept { return settings_; }
    const std::vector<AlarmEvent>& history() const noexcept { return history_; }

private:
    void set_siren(Registry& reg, bool on) const;
    void release();

    AlarmSettings settings_;
    SirenLatch latch_;
    std::map<std::pair<HazardKind, std::string>, TimePoint> last_emailed_;
    std::vector<AlarmEvent> history_;
};

}  // namespace smarthub
