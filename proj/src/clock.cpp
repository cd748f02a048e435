#include "smarthub/clock.hpp"

#include <charconv>
#include <cstdio>
#include <ctime>

namespace smarthub {

namespace {

std::optional<int> two_digits(std::string_view s, int max) {
    if (s.size() != 2) return std::nullopt;
    int v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + 2, v);
    if (ec != std::errc{} || end != s.data() + 2 || v < 0 || v > max) return std::nullopt;
    return v;
}

constexpr int kSecondsPerDay = 24 * 3600;

}  // namespace

std::optional<TimeOfDay> TimeOfDay::parse(std::string_view s) {
    if (s.size() != 5 && s.size() != 8) return std::nullopt;
    if (s[2] != ':' || (s.size() == 8 && s[5] != ':')) return std::nullopt;
    auto h = two_digits(s.substr(0, 2), 23);
    auto m = two_digits(s.substr(3, 2), 59);
    auto sec = s.size() == 8 ? two_digits(s.substr(6, 2), 59) : std::optional<int>(0);
    if (!h || !m || !sec) return std::nullopt;
    return TimeOfDay{*h * 3600 + *m * 60 + *sec};
}

std::string TimeOfDay::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", seconds / 3600, seconds / 60 % 60, seconds % 60);
    return buf;
}

TimePoint WallClock::now() const { return std::chrono::system_clock::now(); }

TimeOfDay WallClock::time_of_day() const {
    std::time_t t = std::chrono::system_clock::to_time_t(now());
    std::tm local{};
    localtime_r(&t, &local);
    return {local.tm_hour * 3600 + local.tm_min * 60 + local.tm_sec};
}

TimePoint FakeClock::now() const {
    std::lock_guard lock(mutex_);
    return now_;
}

TimeOfDay FakeClock::time_of_day() const {
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(now().time_since_epoch()).count();
    auto mod = secs % kSecondsPerDay;
    if (mod < 0) mod += kSecondsPerDay;
    return {static_cast<int>(mod)};
}

void FakeClock::advance(std::chrono::milliseconds by) {
    std::lock_guard lock(mutex_);
    now_ += by;
}

void FakeClock::set(TimePoint t) {
    std::lock_guard lock(mutex_);
    now_ = t;
}

}  // namespace smarthub
