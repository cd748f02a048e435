#include "smarthub/automation.hpp"

#include <spdlog/spdlog.h>

#include <limits>
#include <stdexcept>

namespace smarthub {

std::string_view to_string(Command c) {
    switch (c) {
    case Command::TurnOn: return "TurnOn";
    case Command::TurnOff: return "TurnOff";
    case Command::Hold: return "Hold";
    }
    return "?";
}

void ThermostatRule::validate() const {
    if (!(hysteresis > 0.0)) throw std::invalid_argument("thermostat hysteresis must be > 0");
    if (min_dwell.count() < 0.0) throw std::invalid_argument("thermostat min_dwell must be >= 0");
}

void ScheduleRule::validate() const {
    if (on_time == off_time) throw std::invalid_argument("schedule on_time equals off_time");
    if (on_time.seconds < 0 || on_time.seconds >= 86400 || off_time.seconds < 0 || off_time.seconds >= 86400)
        throw std::invalid_argument("schedule time outside 00:00..23:59:59");
}

Command thermostat_step(const ThermostatRule& rule, double temp, bool actuator_on, Seconds since_flip) {
    const bool dwell_ok = since_flip >= rule.min_dwell;
    if (!dwell_ok) return Command::Hold;
    if (!actuator_on && temp < rule.setpoint - rule.hysteresis) return Command::TurnOn;
    if (actuator_on && temp > rule.setpoint + rule.hysteresis) return Command::TurnOff;
    return Command::Hold;
}

bool in_window(const ScheduleRule& rule, TimeOfDay now) {
    if (rule.on_time < rule.off_time) return now >= rule.on_time && now < rule.off_time;
    return now >= rule.on_time || now < rule.off_time;
}

Command schedule_step(const ScheduleRule& rule, TimeOfDay now, bool actuator_on) {
    bool inside = in_window(rule, now);
    if (inside && !actuator_on) return Command::TurnOn;
    if (!inside && actuator_on) return Command::TurnOff;
    return Command::Hold;
}

AutomationEngine::AutomationEngine(AutomationRules rules) : rules_(std::move(rules)) {
    for (const auto& r : rules_.thermostats) r.validate();
    for (const auto& r : rules_.schedules) r.validate();
}

Seconds AutomationEngine::since_flip(const std::string& actuator, TimePoint now) const {
    auto it = last_flip_.find(actuator);
    if (it == last_flip_.end()) return Seconds{std::numeric_limits<double>::infinity()};
    return std::chrono::duration_cast<Seconds>(now - it->second);
}

void AutomationEngine::warn_once(const std::string& rule_name, const std::string& message) {
    if (warned_.insert(rule_name).second) spdlog::warn("automation: skipping {}: {}", rule_name, message);
}

bool AutomationEngine::usable_actuator(const Registry& view, const std::string& id, const std::string& rule_name) {
    const auto* dev = view.find(id);
    if (!dev) {
        warn_once(rule_name, "unknown actuator '" + id + "'");
        return false;
    }
    if (is_sensor(dev->kind)) {
        warn_once(rule_name, "'" + id + "' is a sensor, not an actuator");
        return false;
    }
    return true;
}

std::vector<AutomationAction> AutomationEngine::tick(const Registry& view, const Clock& clock) {
    std::vector<AutomationAction> actions;
    if (!view.auto_mode()) return actions;

    const auto now = clock.now();
    // Actuator states as they will be after the actions emitted so far.
    std::map<std::string, bool> pending;
    auto is_on = [&](const std::string& id) {
        auto it = pending.find(id);
        return it != pending.end() ? it->second : view.find(id)->status != 0;
    };
    auto emit = [&](const std::string& id, Command c) {
        if (c == Command::Hold) return;
        bool on = c == Command::TurnOn;
        pending[id] = on;
        last_flip_[id] = now;
        actions.push_back({id, on});
    };

    for (std::size_t i = 0; i < rules_.thermostats.size(); ++i) {
        const auto& rule = rules_.thermostats[i];
        auto name = "thermostat[" + std::to_string(i) + "]";
        const auto* sensor = view.find(rule.sensor_id);
        if (!sensor || sensor->kind != DeviceKind::TempSensor) {
            warn_once(name, "'" + rule.sensor_id + "' is not a temperature sensor");
            continue;
        }
        if (!usable_actuator(view, rule.actuator_id, name)) continue;
        auto c = thermostat_step(rule, static_cast<double>(sensor->status), is_on(rule.actuator_id),
                                 since_flip(rule.actuator_id, now));
        emit(rule.actuator_id, c);
    }

    const auto tod = clock.time_of_day();
    for (std::size_t i = 0; i < rules_.schedules.size(); ++i) {
        const auto& rule = rules_.schedules[i];
        if (!usable_actuator(view, rule.actuator_id, "schedule[" + std::to_string(i) + "]")) continue;
        emit(rule.actuator_id, schedule_step(rule, tod, is_on(rule.actuator_id)));
    }
    return actions;
}

}  // namespace smarthub
