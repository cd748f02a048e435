#pragma once

#include "smarthub/alarm.hpp"
#include "smarthub/automation.hpp"
#include "smarthub/device.hpp"
#include "smarthub/mail.hpp"
#include "smarthub/smtp_transport.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smarthub {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MailMode { Capture, Smtp };

struct MailConfig {
    MailMode mode = MailMode::Capture;
    SmtpSettings smtp;
    RetryPolicy retry;
};

struct HubConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path state_path = "hub_state.txt";
    std::vector<DeviceSpec> roster = default_roster();
    MailConfig mail;
    AlarmSettings alarm;
    AutomationRules automation{{ThermostatRule{}}, {}};
    Seconds tick_period{1.0};
    std::optional<std::filesystem::path> panel_dir;
};

/// JSON text; relative paths resolve against `base_dir`. Throws ConfigError.
HubConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = ".");
HubConfig load_config(const std::filesystem::path& path);

/// A JSON array of {"id", "kind", "location"} objects.
std::vector<DeviceSpec> parse_roster(std::string_view json_text);

}  // namespace smarthub
