#include "smarthub/sensor_sim.hpp"

#include "smarthub/hub.hpp"

#include <spdlog/spdlog.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

namespace smarthub {

namespace {

constexpr std::string_view kEventPrefix = "event:";

std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<TraceEntry> parse_trace(std::istream& in) {
    std::vector<TraceEntry> out;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    double last_at = 0.0;

    while (std::getline(in, line)) {
        ++line_no;
        auto l = trim(line);
        if (l.empty() || l.front() == '#') continue;
        if (!have_header) {
            if (l != "at_s,target,value") throw TraceParseError(line_no, "expected header 'at_s,target,value'");
            have_header = true;
            continue;
        }

        auto c1 = l.find(',');
        auto c2 = c1 == std::string_view::npos ? c1 : l.find(',', c1 + 1);
        if (c2 == std::string_view::npos) throw TraceParseError(line_no, "expected three fields");
        auto at_s = trim(l.substr(0, c1));
        auto target = trim(l.substr(c1 + 1, c2 - c1 - 1));
        auto value = trim(l.substr(c2 + 1));

        double at = 0.0;
        auto [end, ec] = std::from_chars(at_s.data(), at_s.data() + at_s.size(), at);
        if (at_s.empty() || ec != std::errc{} || end != at_s.data() + at_s.size() || !std::isfinite(at) || at < 0)
            throw TraceParseError(line_no, "bad time '" + std::string(at_s) + "'");
        if (at < last_at) throw TraceParseError(line_no, "time goes backwards");
        last_at = at;
        if (target.empty()) throw TraceParseError(line_no, "empty target");

        TraceEntry entry;
        entry.at = Seconds{at};
        entry.line = line_no;
        if (target.starts_with(kEventPrefix)) {
            auto kind_name = target.substr(kEventPrefix.size());
            auto kind = parse_hazard_kind(kind_name);
            if (!kind) throw TraceParseError(line_no, "unknown event kind '" + std::string(kind_name) + "'");
            entry.what = HazardTrigger{*kind, std::string(value)};
        } else {
            std::int64_t v = 0;
            auto [vend, vec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (value.empty() || vec != std::errc{} || vend != value.data() + value.size())
                throw TraceParseError(line_no, "reading '" + std::string(value) + "' is not an integer");
            entry.what = SensorReading{std::string(target), v};
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<TraceEntry> load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TraceParseError(0, "cannot open " + path.string());
    return parse_trace(in);
}

void HubSimSink::inject_reading(const std::string& sensor_id, std::int64_t value) { hub_.set_sensor(sensor_id, value); }

void HubSimSink::trigger_event(HazardKind kind, const std::string& location) { hub_.raise_alarm(kind, location); }

SimulatedPacer::SimulatedPacer(FakeClock& clock, Hub& hub, Seconds step)
    : clock_(clock),
      hub_(hub),
      step_(std::chrono::duration_cast<std::chrono::milliseconds>(step)),
      start_(clock.now()),
      reached_(start_) {
    if (step_.count() <= 0) throw std::invalid_argument("SimulatedPacer step must be positive");
}

void SimulatedPacer::wait_until(Seconds offset) {
    auto target = start_ + std::chrono::duration_cast<std::chrono::milliseconds>(offset);
    while (reached_ + step_ <= target) {
        reached_ += step_;
        clock_.set(reached_);
        hub_.tick();
    }
    if (reached_ < target) {
        reached_ = target;
        clock_.set(reached_);
    }
}

void SimulatedPacer::after_entry() { hub_.tick(); }

WallPacer::WallPacer(double speed) : speed_(speed), start_(std::chrono::steady_clock::now()) {
    if (!(speed > 0)) throw std::invalid_argument("replay speed must be > 0");
}

void WallPacer::wait_until(Seconds offset) {
    if (std::isinf(speed_)) return;
    auto due = start_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(offset / speed_);
    std::this_thread::sleep_until(due);
}

ReplaySummary replay(const std::vector<TraceEntry>& trace, SimSink& sink, Pacer& pacer) {
    ReplaySummary summary;
    for (const auto& entry : trace) {
        pacer.wait_until(entry.at);
        try {
            if (const auto* r = std::get_if<SensorReading>(&entry.what)) sink.inject_reading(r->sensor_id, r->value);
            else {
                const auto& ev = std::get<HazardTrigger>(entry.what);
                sink.trigger_event(ev.kind, ev.location);
            }
            ++summary.applied;
        } catch (const std::exception& e) {
            spdlog::warn("replay: line {}: {}", entry.line, e.what());
            ++summary.errors;
        }
        pacer.after_entry();
    }
    return summary;
}

}  // namespace smarthub
