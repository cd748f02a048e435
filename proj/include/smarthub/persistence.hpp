#pragma once

// Key-value state file, the hub's EEPROM:
//
//   # smarthub state
//   version = 1
//   password = 1234
//   auto = 0
//   fan_speed = 0
//   device.Light_1 = 0
//   ...
//   end = <number of key lines above>
//
// A file without a matching `end` line is treated as truncated.

#include "smarthub/device.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smarthub {

inline constexpr std::string_view kDefaultPassword = "1234";

class CorruptStateFile : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HubState {
    std::string password{kDefaultPassword};
    Registry registry;

    bool operator==(const HubState&) const = default;
};

/// A password must fit both the auth slot and the action slot of a command.
bool is_valid_password(std::string_view pw);

std::string serialize_state(const HubState& state);

/// Statuses for ids missing from `roster` are dropped with a warning.
/// Throws CorruptStateFile.
HubState parse_state(std::string_view text, const std::vector<DeviceSpec>& roster);

struct BootResult {
    HubState state;
    bool fresh = false;  // no state file existed
};

/// Loads `path`, or returns defaults (password "1234", everything off) when
/// it does not exist. Throws CorruptStateFile for an unreadable or
/// malformed file rather than falling back to defaults.
BootResult boot(const std::filesystem::path& path, const std::vector<DeviceSpec>& roster);

/// Writes a sibling temp file and renames it over `path`. Throws IoFailure.
void persist(const HubState& state, const std::filesystem::path& path);

}  // namespace smarthub
