#pragma once

#include "smarthub/packet.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smarthub {

enum class DeviceKind { Switch, Fan, Siren, Heater, TempSensor, GasSensor, MotionSensor };

std::string_view to_string(DeviceKind kind);
std::optional<DeviceKind> parse_device_kind(std::string_view name);

inline bool is_sensor(DeviceKind k) {
    return k == DeviceKind::TempSensor || k == DeviceKind::GasSensor || k == DeviceKind::MotionSensor;
}

// Temperatures travel on the wire as celsius + 50 so winter readings stay
// non-negative. Everything inside the hub works in plain celsius.
inline constexpr std::int64_t kTemperatureWireOffset = 50;

// Names that live in the target namespace but are not roster devices.
inline constexpr std::string_view kFanSpeedTarget = "FanSpeed";
inline constexpr std::string_view kAutoTarget = "Auto";
inline constexpr std::string_view kStatusTarget = "Status";
inline constexpr std::string_view kChangePassTarget = "ChangePass";

enum class DeviceErrorKind { UnknownTarget, UnknownAction, SpeedOutOfRange, NotASensor, NotRepresentable };

class DeviceError : public std::runtime_error {
public:
    DeviceError(DeviceErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    DeviceErrorKind kind() const noexcept { return kind_; }

private:
    DeviceErrorKind kind_;
};

struct DeviceSpec {
    std::string id;
    DeviceKind kind = DeviceKind::Switch;
    std::string location;
};

struct DeviceState {
    std::string id;
    DeviceKind kind = DeviceKind::Switch;
    std::int64_t status = 0;
    std::string location;

    bool operator==(const DeviceState&) const = default;
};

/// Light_1, Light_2, Plug_1, Fan, Heater, Siren, Temp_Living, Gas_Kitchen, Motion_Garage.
std::vector<DeviceSpec> default_roster();

/// The authoritative device table. Every mutator validates before it
/// writes, so a thrown DeviceError leaves the registry untouched.
class Registry {
public:
    /// Throws std::invalid_argument on duplicate, reserved or ill-formed ids.
    Registry() : Registry(default_roster()) {}
    explicit Registry(const std::vector<DeviceSpec>& roster);

    const std::vector<DeviceState>& devices() const noexcept { return devices_; }
    const DeviceState* find(std::string_view id) const;
    const DeviceState* first_of_kind(DeviceKind kind) const;

    int fan_speed() const noexcept { return fan_speed_; }
    bool auto_mode() const noexcept { return auto_mode_; }

    void set_switch(std::string_view id, bool on);
    void set_fan_speed(int speed);
    void set_auto_mode(bool on) noexcept { auto_mode_ = on; }
    void set_sensor(std::string_view id, std::int64_t value);

    /// Writes a raw status word, validating it against the device kind.
    /// Used when restoring persisted state.
    void restore_status(std::string_view id, std::int64_t value);

    bool operator==(const Registry&) const = default;

private:
    DeviceState& mutable_device(std::string_view id);

    std::vector<DeviceState> devices_;
    int fan_speed_ = 0;
    bool auto_mode_ = false;
};

struct ActionOutcome {
    Registry changed;
    ResponseCode code_hint = ResponseCode::Ok;
};

/// On/Off for actuators, FanSpeed_<0..3>, Auto_On/Off, Status_All.
/// ChangePass is the server's business and is UnknownTarget here.
ActionOutcome apply_action(const Registry& reg, std::string_view target, std::string_view action);

/// Same dispatch, in place. Strong exception guarantee.
void apply_action_in_place(Registry& reg, std::string_view target, std::string_view action);

/// Every device in roster order, then FanSpeed and Auto. Internal units.
std::vector<DeviceStatus> snapshot(const Registry& reg);

/// snapshot() with temperatures offset-encoded for response packets.
std::vector<DeviceStatus> wire_snapshot(const Registry& reg);

Registry set_sensor_value(const Registry& reg, std::string_view sensor_id, std::int64_t value);

}  // namespace smarthub
