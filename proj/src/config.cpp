#include "smarthub/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace smarthub {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<T>();
}

TimeOfDay parse_time(const json& j, const char* what) {
    auto s = j.get<std::string>();
    auto t = TimeOfDay::parse(s);
    if (!t) throw ConfigError(std::string(what) + ": bad time of day '" + s + "'");
    return *t;
}

std::vector<DeviceSpec> roster_from_json(const json& arr) {
    if (!arr.is_array()) throw ConfigError("roster must be an array");
    std::vector<DeviceSpec> roster;
    for (const auto& item : arr) {
        DeviceSpec spec;
        spec.id = item.at("id").get<std::string>();
        auto kind_name = item.at("kind").get<std::string>();
        auto kind = parse_device_kind(kind_name);
        if (!kind) throw ConfigError("roster: unknown device kind '" + kind_name + "'");
        spec.kind = *kind;
        spec.location = get_or<std::string>(item, "location", "");
        roster.push_back(std::move(spec));
    }
    // Let Registry apply its own id checks now rather than at boot.
    try {
        Registry check(roster);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("roster: ") + e.what());
    }
    return roster;
}

HubConfig from_json(const json& j, const std::filesystem::path& base) {
    HubConfig cfg;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    if (j.contains("listen")) {
        const auto& l = j.at("listen");
        cfg.host = get_or<std::string>(l, "host", cfg.host);
        cfg.port = get_or<int>(l, "port", cfg.port);
        if (cfg.port < 0 || cfg.port > 65535) throw ConfigError("listen.port out of range");
    }
    if (j.contains("state_path")) cfg.state_path = resolve(base, j.at("state_path").get<std::string>());
    else cfg.state_path = base / cfg.state_path;

    if (j.contains("roster")) {
        const auto& r = j.at("roster");
        if (r.is_string()) {
            auto path = resolve(base, r.get<std::string>());
            try {
                cfg.roster = roster_from_json(json::parse(read_file(path)));
            } catch (const json::exception& e) {
                throw ConfigError(path.string() + ": " + e.what());
            }
        } else {
            cfg.roster = roster_from_json(r);
        }
    }

    if (j.contains("mail")) {
        const auto& m = j.at("mail");
        auto mode = get_or<std::string>(m, "mode", "capture");
        if (mode == "capture") cfg.mail.mode = MailMode::Capture;
        else if (mode == "smtp") cfg.mail.mode = MailMode::Smtp;
        else throw ConfigError("mail.mode must be 'capture' or 'smtp'");
        auto& s = cfg.mail.smtp;
        s.host = get_or<std::string>(m, "host", s.host);
        s.port = get_or<int>(m, "port", s.port);
        s.sender = get_or<std::string>(m, "sender", s.sender);
        s.username = get_or<std::string>(m, "username", s.username);
        s.password = get_or<std::string>(m, "password", s.password);
        s.starttls = get_or<bool>(m, "starttls", s.starttls);
        cfg.alarm.recipients = get_or<std::vector<std::string>>(m, "recipients", {});
        cfg.mail.retry.attempts = get_or<int>(m, "attempts", cfg.mail.retry.attempts);
        cfg.mail.retry.initial_backoff =
            std::chrono::milliseconds(get_or<long>(m, "backoff_ms", cfg.mail.retry.initial_backoff.count()));
    }

    if (j.contains("alarm")) {
        const auto& a = j.at("alarm");
        cfg.alarm.auto_off_after = Seconds(get_or<double>(a, "siren_auto_off_s", cfg.alarm.auto_off_after.count()));
        cfg.alarm.debounce = Seconds(get_or<double>(a, "debounce_s", cfg.alarm.debounce.count()));
        if (cfg.alarm.auto_off_after.count() < 0 || cfg.alarm.debounce.count() < 0)
            throw ConfigError("alarm durations must be >= 0");
    }

    if (j.contains("automation")) {
        const auto& a = j.at("automation");
        cfg.tick_period = Seconds(get_or<double>(a, "tick_s", cfg.tick_period.count()));
        if (!(cfg.tick_period.count() > 0)) throw ConfigError("automation.tick_s must be > 0");
        if (a.contains("thermostats")) {
            cfg.automation.thermostats.clear();
            for (const auto& t : a.at("thermostats")) {
                ThermostatRule rule;
                rule.sensor_id = get_or<std::string>(t, "sensor", rule.sensor_id);
                rule.actuator_id = get_or<std::string>(t, "actuator", rule.actuator_id);
                rule.setpoint = get_or<double>(t, "setpoint", rule.setpoint);
                rule.hysteresis = get_or<double>(t, "hysteresis", rule.hysteresis);
                rule.min_dwell = Seconds(get_or<double>(t, "min_dwell_s", rule.min_dwell.count()));
                try {
                    rule.validate();
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
                cfg.automation.thermostats.push_back(rule);
            }
        }
        if (a.contains("schedules")) {
            for (const auto& s : a.at("schedules")) {
                ScheduleRule rule;
                rule.actuator_id = s.at("actuator").get<std::string>();
                rule.on_time = parse_time(s.at("on"), "schedule.on");
                rule.off_time = parse_time(s.at("off"), "schedule.off");
                try {
                    rule.validate();
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
                cfg.automation.schedules.push_back(rule);
            }
        }
    }

    if (j.contains("panel_dir")) cfg.panel_dir = resolve(base, j.at("panel_dir").get<std::string>());
    return cfg;
}

}  // namespace

HubConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    try {
        return from_json(json::parse(json_text), base_dir);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

HubConfig load_config(const std::filesystem::path& path) {
    auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return parse_config(read_file(path), base);
}

std::vector<DeviceSpec> parse_roster(std::string_view json_text) {
    try {
        return roster_from_json(json::parse(json_text));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("roster: ") + e.what());
    }
}

}  // namespace smarthub
