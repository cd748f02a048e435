#include "smarthub/client.hpp"

#include <httplib.h>
#include <json.hpp>

#include <regex>

namespace smarthub {

void ClientConfig::validate() const {
    static const std::regex url(R"(^http://[A-Za-z0-9.\-]+(:[0-9]{1,5})?/?$)");
    if (!std::regex_match(server_url, url))
        throw std::invalid_argument("server url must look like http://host[:port], got '" + server_url + "'");
}

ClientReply decode_envelope(const std::string& body) {
    try {
        auto j = nlohmann::json::parse(body);
        ClientReply reply;
        reply.packet = parse_response(j.at("raw").get<std::string>());
        if (j.at("code").get<int>() != to_int(reply.packet.code))
            throw TransportError("envelope code disagrees with raw packet");
        if (j.contains("error")) reply.error = j.at("error").get<std::string>();
        return reply;
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("bad response envelope: ") + e.what());
    } catch (const MalformedPacket& e) {
        throw TransportError(std::string("bad response packet: ") + e.what());
    }
}

HubClient::HubClient(ClientConfig config) : config_(std::move(config)) {
    config_.validate();
    auto url = config_.server_url;
    if (url.back() == '/') url.pop_back();
    http_ = std::make_unique<httplib::Client>(url);
    http_->set_connection_timeout(5);
    http_->set_read_timeout(10);
}

HubClient::~HubClient() = default;

ClientReply HubClient::decode(const std::string& body) const { return decode_envelope(body); }

ResponsePacket HubClient::command(const std::string& target, const std::string& action) {
    auto packet = serialize_command({config_.password, target, action});
    auto res = http_->Post("/cmd", packet, "text/plain");
    if (!res) throw TransportError("cannot reach " + config_.server_url + ": " + httplib::to_string(res.error()));
    if (res->status != 200) throw TransportError("HTTP " + std::to_string(res->status));
    return decode(res->body).packet;
}

ResponsePacket HubClient::command_get(const std::string& target, const std::string& action) {
    auto packet = serialize_command({config_.password, target, action});
    httplib::Params params{{"packet", packet}};
    auto res = http_->Get("/cmd", params, httplib::Headers{});
    if (!res) throw TransportError("cannot reach " + config_.server_url + ": " + httplib::to_string(res.error()));
    if (res->status != 200) throw TransportError("HTTP " + std::to_string(res->status));
    return decode(res->body).packet;
}

ClientReply HubClient::inject_reading(const std::string& sensor_id, std::int64_t value) {
    nlohmann::json j{{"sensor", sensor_id}, {"value", value}, {"password", config_.password}};
    auto res = http_->Post("/sim/reading", j.dump(), "application/json");
    if (!res) throw TransportError("cannot reach " + config_.server_url + ": " + httplib::to_string(res.error()));
    return decode(res->body);
}

ClientReply HubClient::inject_event(HazardKind kind, const std::string& location) {
    nlohmann::json j{{"kind", std::string(to_string(kind))}, {"location", location}, {"password", config_.password}};
    auto res = http_->Post("/sim/event", j.dump(), "application/json");
    if (!res) throw TransportError("cannot reach " + config_.server_url + ": " + httplib::to_string(res.error()));
    return decode(res->body);
}

void HttpSimSink::inject_reading(const std::string& sensor_id, std::int64_t value) {
    auto reply = client_.inject_reading(sensor_id, value);
    if (reply.packet.code != ResponseCode::Ok) throw std::runtime_error(reply.error.value_or("rejected (404)"));
}

void HttpSimSink::trigger_event(HazardKind kind, const std::string& location) {
    auto reply = client_.inject_event(kind, location);
    if (reply.packet.code != ResponseCode::Ok) throw std::runtime_error(reply.error.value_or("rejected (404)"));
}

int exit_code_for(ResponseCode code) { return code == ResponseCode::Rejected ? 4 : 0; }

}  // namespace smarthub
