#pragma once

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace smarthub {

using TimePoint = std::chrono::system_clock::time_point;
using Seconds = std::chrono::duration<double>;

/// Seconds since local midnight, 0..86399.
struct TimeOfDay {
    int seconds = 0;

    static std::optional<TimeOfDay> parse(std::string_view hhmm);  // "HH:MM" or "HH:MM:SS"
    static TimeOfDay from_hm(int hours, int minutes) { return {hours * 3600 + minutes * 60}; }
    std::string str() const;

    auto operator<=>(const TimeOfDay&) const = default;
};

class Clock {
public:
    virtual ~Clock() = default;
    virtual TimePoint now() const = 0;
    virtual TimeOfDay time_of_day() const = 0;
};

class WallClock final : public Clock {
public:
    TimePoint now() const override;
    TimeOfDay time_of_day() const override;  // local time zone
};

/// Manually advanced clock; its epoch is midnight so time_of_day() is
/// elapsed time modulo one day.
class FakeClock final : public Clock {
public:
    explicit FakeClock(TimePoint start = TimePoint{}) : now_(start) {}

    TimePoint now() const override;
    TimeOfDay time_of_day() const override;

    void advance(std::chrono::milliseconds by);
    void set(TimePoint t);

private:
    mutable std::mutex mutex_;
    TimePoint now_;
};

}  // namespace smarthub
