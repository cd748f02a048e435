#include "smarthub/device.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <utility>

namespace smarthub {

namespace {

constexpr std::array<std::pair<DeviceKind, std::string_view>, 7> kKindNames{{
    {DeviceKind::Switch, "switch"},
    {DeviceKind::Fan, "fan"},
    {DeviceKind::Siren, "siren"},
    {DeviceKind::Heater, "heater"},
    {DeviceKind::TempSensor, "temp_sensor"},
    {DeviceKind::GasSensor, "gas_sensor"},
    {DeviceKind::MotionSensor, "motion_sensor"},
}};

bool is_reserved(std::string_view id) {
    return id == kFanSpeedTarget || id == kAutoTarget || id == kStatusTarget || id == kChangePassTarget;
}

[[noreturn]] void unknown_target(std::string_view id) {
    throw DeviceError(DeviceErrorKind::UnknownTarget, "unknown target '" + std::string(id) + "'");
}

[[noreturn]] void unknown_action(std::string_view target, std::string_view action) {
    throw DeviceError(DeviceErrorKind::UnknownAction,
                      "unknown action '" + std::string(action) + "' for '" + std::string(target) + "'");
}

std::optional<bool> on_off(std::string_view action) {
    if (action == "On") return true;
    if (action == "Off") return false;
    return std::nullopt;
}

}  // namespace

std::string_view to_string(DeviceKind kind) {
    for (auto [k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<DeviceKind> parse_device_kind(std::string_view name) {
    for (auto [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

std::vector<DeviceSpec> default_roster() {
    return {
        {"Light_1", DeviceKind::Switch, "Living"},
        {"Light_2", DeviceKind::Switch, "Bedroom"},
        {"Plug_1", DeviceKind::Switch, "Living"},
        {"Fan", DeviceKind::Fan, "Living"},
        {"Heater", DeviceKind::Heater, "Living"},
        {"Siren", DeviceKind::Siren, "Hall"},
        {"Temp_Living", DeviceKind::TempSensor, "Living"},
        {"Gas_Kitchen", DeviceKind::GasSensor, "Kitchen"},
        {"Motion_Garage", DeviceKind::MotionSensor, "Garage"},
    };
}

Registry::Registry(const std::vector<DeviceSpec>& roster) {
    devices_.reserve(roster.size());
    for (const auto& spec : roster) {
        if (!is_valid_target(spec.id) || !is_valid_device_id(spec.id))
            throw std::invalid_argument("invalid device id '" + spec.id + "'");
        if (is_reserved(spec.id)) throw std::invalid_argument("reserved device id '" + spec.id + "'");
        if (find(spec.id)) throw std::invalid_argument("duplicate device id '" + spec.id + "'");
        devices_.push_back({spec.id, spec.kind, 0, spec.location});
    }
}

const DeviceState* Registry::find(std::string_view id) const {
    auto it = std::find_if(devices_.begin(), devices_.end(), [&](const auto& d) { return d.id == id; });
    return it == devices_.end() ? nullptr : &*it;
}

const DeviceState* Registry::first_of_kind(DeviceKind kind) const {
    auto it = std::find_if(devices_.begin(), devices_.end(), [&](const auto& d) { return d.kind == kind; });
    return it == devices_.end() ? nullptr : &*it;
}

DeviceState& Registry::mutable_device(std::string_view id) {
    auto it = std::find_if(devices_.begin(), devices_.end(), [&](const auto& d) { return d.id == id; });
    if (it == devices_.end()) unknown_target(id);
    return *it;
}

void Registry::set_switch(std::string_view id, bool on) {
    auto& dev = mutable_device(id);
    if (is_sensor(dev.kind)) unknown_action(id, on ? "On" : "Off");
    dev.status = on ? 1 : 0;
}

void Registry::set_fan_speed(int speed) {
    if (speed < 0 || speed > 3)
        throw DeviceError(DeviceErrorKind::SpeedOutOfRange, "fan speed " + std::to_string(speed) + " not in 0..3");
    fan_speed_ = speed;
}

void Registry::set_sensor(std::string_view id, std::int64_t value) {
    auto& dev = mutable_device(id);
    if (!is_sensor(dev.kind))
        throw DeviceError(DeviceErrorKind::NotASensor, "'" + std::string(id) + "' is not a sensor");
    auto floor = dev.kind == DeviceKind::TempSensor ? -kTemperatureWireOffset : 0;
    if (value < floor)
        throw DeviceError(DeviceErrorKind::NotRepresentable,
                          "value " + std::to_string(value) + " for '" + std::string(id) + "' has no status word");
    dev.status = value;
}

void Registry::restore_status(std::string_view id, std::int64_t value) {
    auto& dev = mutable_device(id);
    if (is_sensor(dev.kind)) {
        set_sensor(id, value);
        return;
    }
    if (value != 0 && value != 1)
        throw DeviceError(DeviceErrorKind::NotRepresentable,
                          "status " + std::to_string(value) + " for switch-kind '" + dev.id + "'");
    dev.status = value;
}

void apply_action_in_place(Registry& reg, std::string_view target, std::string_view action) {
    if (target == kStatusTarget) {
        if (action != "All") unknown_action(target, action);
        return;
    }
    if (target == kAutoTarget) {
        auto on = on_off(action);
        if (!on) unknown_action(target, action);
        reg.set_auto_mode(*on);
        return;
    }
    if (target == kFanSpeedTarget) {
        if (action.empty() || !std::all_of(action.begin(), action.end(), [](char c) { return c >= '0' && c <= '9'; }))
            unknown_action(target, action);
        int speed = 0;
        auto [end, ec] = std::from_chars(action.data(), action.data() + action.size(), speed);
        if (ec != std::errc{} || end != action.data() + action.size())
            throw DeviceError(DeviceErrorKind::SpeedOutOfRange, "fan speed '" + std::string(action) + "'");
        reg.set_fan_speed(speed);
        return;
    }
    const auto* dev = reg.find(target);
    if (!dev) unknown_target(target);
    auto on = on_off(action);
    if (!on || is_sensor(dev->kind)) unknown_action(target, action);
    reg.set_switch(target, *on);
}

ActionOutcome apply_action(const Registry& reg, std::string_view target, std::string_view action) {
    ActionOutcome out{reg, ResponseCode::Ok};
    apply_action_in_place(out.changed, target, action);
    return out;
}

std::vector<DeviceStatus> snapshot(const Registry& reg) {
    std::vector<DeviceStatus> out;
    out.reserve(reg.devices().size() + 2);
    for (const auto& d : reg.devices()) out.push_back({d.id, d.status});
    out.push_back({std::string(kFanSpeedTarget), reg.fan_speed()});
    out.push_back({std::string(kAutoTarget), reg.auto_mode() ? 1 : 0});
    return out;
}

std::vector<DeviceStatus> wire_snapshot(const Registry& reg) {
    auto out = snapshot(reg);
    for (std::size_t i = 0; i < reg.devices().size(); ++i)
        if (reg.devices()[i].kind == DeviceKind::TempSensor) out[i].status += kTemperatureWireOffset;
    return out;
}

Registry set_sensor_value(const Registry& reg, std::string_view sensor_id, std::int64_t value) {
    Registry out = reg;
    out.set_sensor(sensor_id, value);
    return out;
}

}  // namespace smarthub
