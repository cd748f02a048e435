#pragma once

// Stand-ins for the physical sensors. Readings and hazard events reach the
// hub through a SimSink, either in-process or over HTTP, and can be
// scripted with CSV traces:
//
//   at_s,target,value
//   # comment
//   0,Temp_Living,18
//   120,event:Fire,Kitchen

#include "smarthub/alarm.hpp"
#include "smarthub/clock.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace smarthub {

class Hub;

class TraceParseError : public std::runtime_error {
public:
    TraceParseError(int line, const std::string& what)
        : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct SensorReading {
    std::string sensor_id;
    std::int64_t value = 0;

    bool operator==(const SensorReading&) const = default;
};

struct HazardTrigger {
    HazardKind kind = HazardKind::Fire;
    std::string location;

    bool operator==(const HazardTrigger&) const = default;
};

struct TraceEntry {
    Seconds at{0.0};
    std::variant<SensorReading, HazardTrigger> what;
    int line = 0;
};

/// Throws TraceParseError with the 1-based physical line number.
std::vector<TraceEntry> parse_trace(std::istream& in);
std::vector<TraceEntry> load_trace(const std::filesystem::path& path);

class SimSink {
public:
    virtual ~SimSink() = default;
    virtual void inject_reading(const std::string& sensor_id, std::int64_t value) = 0;
    virtual void trigger_event(HazardKind kind, const std::string& location) = 0;
};

/// Injects straight into an in-process hub.
class HubSimSink final : public SimSink {
public:
    explicit HubSimSink(Hub& hub) : hub_(hub) {}
    void inject_reading(const std::string& sensor_id, std::int64_t value) override;
    void trigger_event(HazardKind kind, const std::string& location) override;

private:
    Hub& hub_;
};

/// Decides how time passes between trace entries.
class Pacer {
public:
    virtual ~Pacer() = default;
    virtual void wait_until(Seconds offset) = 0;
    virtual void after_entry() {}
};

/// Simulated time: advances a fake clock in tick-sized steps, ticking the
/// hub at each step and once after every entry.
class SimulatedPacer final : public Pacer {
public:
    SimulatedPacer(FakeClock& clock, Hub& hub, Seconds step = Seconds{1.0});
    void wait_until(Seconds offset) override;
    void after_entry() override;

private:
    FakeClock& clock_;
    Hub& hub_;
    std::chrono::milliseconds step_;
    TimePoint start_;
    TimePoint reached_;
};

/// Real time scaled by `speed`; infinity means no waiting.
class WallPacer final : public Pacer {
public:
    explicit WallPacer(double speed);
    void wait_until(Seconds offset) override;

private:
    double speed_;
    std::chrono::steady_clock::time_point start_;
};

struct ReplaySummary {
    std::size_t applied = 0;
    std::size_t errors = 0;

    bool operator==(const ReplaySummary&) const = default;
};

/// Entries that the sink rejects are logged and counted, never fatal.
ReplaySummary replay(const std::vector<TraceEntry>& trace, SimSink& sink, Pacer& pacer);

}  // namespace smarthub
