#pragma once

#include "smarthub/alarm.hpp"
#include "smarthub/packet.hpp"
#include "smarthub/sensor_sim.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace httplib {
class Client;
}

namespace smarthub {

class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClientConfig {
    std::string server_url = "http://127.0.0.1:8080";
    std::string password{"1234"};

    /// http://host[:port] only. Throws std::invalid_argument.
    void validate() const;
};

struct ClientReply {
    ResponsePacket packet;
    std::optional<std::string> error;  // set by the simulator endpoints
};

/// Talks to a hub over HTTP. Every command goes through the packet codec.
class HubClient {
public:
    explicit HubClient(ClientConfig config);
    ~HubClient();

    /// POST /cmd. Throws TransportError (network, bad envelope) and
    /// InvalidField (a token the grammar cannot carry).
    ResponsePacket command(const std::string& target, const std::string& action);
    /// Same via GET /cmd?packet=...
    ResponsePacket command_get(const std::string& target, const std::string& action);

    ResponsePacket status() { return command("Status", "All"); }
    ResponsePacket change_password(const std::string& new_password) { return command("ChangePass", new_password); }

    ClientReply inject_reading(const std::string& sensor_id, std::int64_t value);
    ClientReply inject_event(HazardKind kind, const std::string& location);

    const ClientConfig& config() const noexcept { return config_; }

private:
    ClientReply decode(const std::string& body) const;

    ClientConfig config_;
    std::unique_ptr<httplib::Client> http_;
};

/// Parses a hub JSON envelope. The "raw" packet text is authoritative.
/// Throws TransportError when the envelope is malformed or inconsistent.
ClientReply decode_envelope(const std::string& body);

/// Replay target that posts to the hub's simulator endpoints; rejected
/// injections throw so replay() counts them as errors.
class HttpSimSink final : public SimSink {
public:
    explicit HttpSimSink(HubClient& client) : client_(client) {}
    void inject_reading(const std::string& sensor_id, std::int64_t value) override;
    void trigger_event(HazardKind kind, const std::string& location) override;

private:
    HubClient& client_;
};

/// 0 for 200/201, 4 for 404.
int exit_code_for(ResponseCode code);

inline constexpr int kExitTransportError = 2;
inline constexpr int kExitUsageError = 1;

}  // namespace smarthub
