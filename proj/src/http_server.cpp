#include "smarthub/http_server.hpp"

#include <httplib.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include <thread>

namespace smarthub {

using nlohmann::ordered_json;

std::string envelope_json(const ResponsePacket& pkt, const std::optional<std::string>& error) {
    ordered_json j;
    j["code"] = to_int(pkt.code);
    j["statuses"] = ordered_json::array();
    for (const auto& s : pkt.statuses) j["statuses"].push_back({{"device", s.device}, {"status", s.status}});
    j["raw"] = serialize_response(pkt);
    if (error) j["error"] = *error;
    return j.dump();
}

namespace {

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, const ResponsePacket& pkt, const std::optional<std::string>& error = std::nullopt) {
    res.status = 200;
    res.set_content(envelope_json(pkt, error), kJson);
}

// httplib only closes the listening socket from inside its accept loop.
// A server stopped before serving would keep accepting into the backlog.
class ClosableServer final : public httplib::Server {
public:
    void close_listener() {
        auto sock = svr_sock_.exchange(INVALID_SOCKET);
        if (sock != INVALID_SOCKET) httplib::detail::close_socket(sock);
    }
};

}  // namespace

HttpServer::HttpServer(Hub& hub, std::optional<std::filesystem::path> panel_dir)
    : hub_(hub), server_(std::make_unique<ClosableServer>()) {
    install_routes();
    if (panel_dir) {
        if (!server_->set_mount_point("/", panel_dir->string()))
            spdlog::warn("http: panel directory {} not found, panel disabled", panel_dir->string());
    }
}

HttpServer::~HttpServer() {
    stop();
    static_cast<ClosableServer&>(*server_).close_listener();
}

void HttpServer::install_routes() {
    server_->Post("/cmd", [this](const httplib::Request& req, httplib::Response& res) {
        reply(res, hub_.handle_command(req.body));
    });
    server_->Get("/cmd", [this](const httplib::Request& req, httplib::Response& res) {
        reply(res, hub_.handle_command(req.get_param_value("packet")));
    });
    server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });

    server_->Post("/sim/reading", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            auto j = nlohmann::json::parse(req.body);
            if (!hub_.check_password(j.at("password").get<std::string>())) return reply(res, ResponsePacket::rejected());
            hub_.set_sensor(j.at("sensor").get<std::string>(), j.at("value").get<std::int64_t>());
            reply(res, hub_.status());
        } catch (const nlohmann::json::exception& e) {
            reply(res, ResponsePacket::rejected(), std::string("bad request: ") + e.what());
        } catch (const DeviceError& e) {
            reply(res, ResponsePacket::rejected(), e.what());
        }
    });
    server_->Post("/sim/event", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            auto j = nlohmann::json::parse(req.body);
            if (!hub_.check_password(j.at("password").get<std::string>())) return reply(res, ResponsePacket::rejected());
            auto kind_name = j.at("kind").get<std::string>();
            auto kind = parse_hazard_kind(kind_name);
            if (!kind) return reply(res, ResponsePacket::rejected(), "unknown hazard kind '" + kind_name + "'");
            hub_.raise_alarm(*kind, j.at("location").get<std::string>());
            reply(res, hub_.status());
        } catch (const nlohmann::json::exception& e) {
            reply(res, ResponsePacket::rejected(), std::string("bad request: ") + e.what());
        } catch (const EmptyLocation& e) {
            reply(res, ResponsePacket::rejected(), e.what());
        }
    });
}

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() {
    serving_ = true;
    bool ok = !stop_requested_ && server_->listen_after_bind();
    serving_ = false;
    return ok;
}

void HttpServer::stop() {
    stop_requested_ = true;
    if (!server_) return;
    // httplib ignores stop() until the accept loop is running.
    while (serving_ && !server_->is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    server_->stop();
}

}  // namespace smarthub
