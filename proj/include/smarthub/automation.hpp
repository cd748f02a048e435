#pragma once

#include "smarthub/clock.hpp"
#include "smarthub/device.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace smarthub {

enum class Command { TurnOn, TurnOff, Hold };

std::string_view to_string(Command c);

struct ThermostatRule {
    std::string sensor_id = "Temp_Living";
    std::string actuator_id = "Heater";
    double setpoint = 22.0;
    double hysteresis = 0.5;
    Seconds min_dwell{60.0};

    /// Throws std::invalid_argument unless hysteresis > 0 and min_dwell >= 0.
    void validate() const;
};

/// Actuator on during [on_time, off_time); the window may wrap midnight.
struct ScheduleRule {
    std::string actuator_id;
    TimeOfDay on_time;
    TimeOfDay off_time;

    void validate() const;
};

struct AutomationRules {
    std::vector<ThermostatRule> thermostats;
    std::vector<ScheduleRule> schedules;
};

/// Symmetric dead band [setpoint - h, setpoint + h]; flips wait out min_dwell.
Command thermostat_step(const ThermostatRule& rule, double temp, bool actuator_on, Seconds since_flip);

bool in_window(const ScheduleRule& rule, TimeOfDay now);
Command schedule_step(const ScheduleRule& rule, TimeOfDay now, bool actuator_on);

struct AutomationAction {
    std::string actuator_id;
    bool turn_on = false;

    bool operator==(const AutomationAction&) const = default;
};

/// Evaluates the rules against a registry view. Remembers when it last
/// flipped each actuator (for min_dwell) and which broken rules it has
/// already warned about; otherwise stateless. Not thread-safe, the hub
/// calls it under its gate.
class AutomationEngine {
public:
    explicit AutomationEngine(AutomationRules rules = {});

    /// Empty when auto mode is off. Rules naming unknown or wrong-kind
    /// devices are skipped with a logged warning.
    std::vector<AutomationAction> tick(const Registry& view, const Clock& clock);

    const AutomationRules& rules() const noexcept { return rules_; }

private:
    Seconds since_flip(const std::string& actuator, TimePoint now) const;
    bool usable_actuator(const Registry& view, const std::string& id, const std::string& rule_name);
    void warn_once(const std::string& rule_name, const std::string& message);

    AutomationRules rules_;
    std::map<std::string, TimePoint> last_flip_;
    std::set<std::string> warned_;
};

}  // namespace smarthub
