#pragma once

// Command and response packet grammar.
//
//   command:  $<auth>$<target>_<action>
//   response: <code>[ <device>:<status>]*
//
// The target/action split is at the last underscore, so targets such as
// "Light_1" are allowed and actions never contain '_'.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smarthub {

class MalformedPacket : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidField : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ResponseCode : int {
    Ok = 200,
    PasswordChanged = 201,
    Rejected = 404,
};

struct CommandPacket {
    std::string auth;
    std::string target;
    std::string action;

    bool operator==(const CommandPacket&) const = default;
};

struct DeviceStatus {
    std::string device;
    std::int64_t status = 0;

    bool operator==(const DeviceStatus&) const = default;
};

struct ResponsePacket {
    ResponseCode code = ResponseCode::Rejected;
    std::vector<DeviceStatus> statuses;

    bool operator==(const ResponsePacket&) const = default;

    static ResponsePacket rejected() { return {}; }
};

/// Field validators, shared by the codec and by anyone building packets.
bool is_valid_auth(std::string_view s);
bool is_valid_target(std::string_view s);
bool is_valid_action(std::string_view s);
bool is_valid_device_id(std::string_view s);

/// Throws MalformedPacket; never anything else.
CommandPacket parse_command(std::string_view raw);
/// Throws InvalidField when a field breaks the grammar.
std::string serialize_command(const CommandPacket& pkt);

ResponsePacket parse_response(std::string_view raw);
std::string serialize_response(const ResponsePacket& pkt);

/// Maps 200/201/404 to ResponseCode; anything else is MalformedPacket.
ResponseCode response_code_from_int(long value);

inline int to_int(ResponseCode code) { return static_cast<int>(code); }

}  // namespace smarthub
