#pragma once

#include "smarthub/hub.hpp"

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace smarthub {

/// {"code":200,"statuses":[{"device":"Light_1","status":1}],"raw":"200 Light_1:1"}
/// plus "error" when `error` is set. Key order is fixed so equal packets
/// give byte-identical bodies.
std::string envelope_json(const ResponsePacket& pkt, const std::optional<std::string>& error = std::nullopt);

/// HTTP front end:
///   POST /cmd            body = command packet
///   GET  /cmd?packet=... same packet, URL-encoded
///   GET  /healthz        "ok"
///   POST /sim/reading    {"sensor","value","password"}
///   POST /sim/event      {"kind","location","password"}
///   GET  /               static control panel, when panel_dir is set
/// Transport status is 200 for every handled request; the application code
/// lives in the JSON body.
class HttpServer {
public:
    explicit HttpServer(Hub& hub, std::optional<std::filesystem::path> panel_dir = std::nullopt);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds; port 0 picks a free port. Returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(). Call after bind().
    bool serve();
    void stop();

private:
    void install_routes();

    Hub& hub_;
    std::unique_ptr<httplib::Server> server_;
    std::atomic<bool> serving_{false};
    std::atomic<bool> stop_requested_{false};
};

}  // namespace smarthub
