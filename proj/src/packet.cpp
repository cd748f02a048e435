#include "smarthub/packet.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace smarthub {

namespace {

// Printable ASCII, no space: 0x21..0x7e.
bool printable_no_space(char c) { return c > 0x20 && c < 0x7f; }

bool all_of(std::string_view s, auto pred) {
    return !s.empty() && std::all_of(s.begin(), s.end(), pred);
}

bool parse_decimal(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    // from_chars accepts a leading '-' but not '+'; we accept neither sign on
    // statuses and codes.
    if (s.front() == '-' || s.front() == '+') return false;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && end == s.data() + s.size();
}

}  // namespace

bool is_valid_auth(std::string_view s) {
    return all_of(s, [](char c) { return printable_no_space(c) && c != '$'; });
}

bool is_valid_target(std::string_view s) {
    return all_of(s, [](char c) { return printable_no_space(c) && c != '$'; });
}

bool is_valid_action(std::string_view s) {
    return all_of(s, [](char c) { return printable_no_space(c) && c != '$' && c != '_'; });
}

bool is_valid_device_id(std::string_view s) {
    return all_of(s, [](char c) { return printable_no_space(c) && c != ':'; });
}

ResponseCode response_code_from_int(long value) {
    switch (value) {
    case 200: return ResponseCode::Ok;
    case 201: return ResponseCode::PasswordChanged;
    case 404: return ResponseCode::Rejected;
    default: throw MalformedPacket("unknown response code " + std::to_string(value));
    }
}

CommandPacket parse_command(std::string_view raw) {
    if (raw.empty() || raw.front() != '$') throw MalformedPacket("command must start with '$'");
    auto second = raw.find('$', 1);
    if (second == std::string_view::npos) throw MalformedPacket("missing second '$'");

    CommandPacket pkt;
    pkt.auth = std::string(raw.substr(1, second - 1));
    auto body = raw.substr(second + 1);
    auto split = body.rfind('_');
    if (split == std::string_view::npos) throw MalformedPacket("no '_' between target and action");
    pkt.target = std::string(body.substr(0, split));
    pkt.action = std::string(body.substr(split + 1));

    if (!is_valid_auth(pkt.auth)) throw MalformedPacket("bad auth field");
    if (!is_valid_target(pkt.target)) throw MalformedPacket("bad target field");
    if (!is_valid_action(pkt.action)) throw MalformedPacket("bad action field");
    return pkt;
}

std::string serialize_command(const CommandPacket& pkt) {
    if (!is_valid_auth(pkt.auth)) throw InvalidField("auth: '" + pkt.auth + "'");
    if (!is_valid_target(pkt.target)) throw InvalidField("target: '" + pkt.target + "'");
    if (!is_valid_action(pkt.action)) throw InvalidField("action: '" + pkt.action + "'");
    std::string out;
    out.reserve(pkt.auth.size() + pkt.target.size() + pkt.action.size() + 3);
    out += '$';
    out += pkt.auth;
    out += '$';
    out += pkt.target;
    out += '_';
    out += pkt.action;
    return out;
}

ResponsePacket parse_response(std::string_view raw) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos <= raw.size()) {
        auto next = raw.find(' ', pos);
        if (next == std::string_view::npos) next = raw.size();
        tokens.push_back(raw.substr(pos, next - pos));
        pos = next + 1;
    }
    // Empty tokens come from leading, trailing or doubled spaces.
    for (auto t : tokens)
        if (t.empty()) throw MalformedPacket("empty token in response");

    std::int64_t code = 0;
    if (!parse_decimal(tokens.front(), code) || code > std::numeric_limits<int>::max())
        throw MalformedPacket("non-numeric response code");

    ResponsePacket pkt;
    pkt.code = response_code_from_int(static_cast<long>(code));
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto colon = tokens[i].rfind(':');
        if (colon == std::string_view::npos) throw MalformedPacket("status token without ':'");
        DeviceStatus ds;
        ds.device = std::string(tokens[i].substr(0, colon));
        if (!is_valid_device_id(ds.device)) throw MalformedPacket("bad device id");
        if (!parse_decimal(tokens[i].substr(colon + 1), ds.status))
            throw MalformedPacket("status is not a non-negative integer");
        for (const auto& seen : pkt.statuses)
            if (seen.device == ds.device) throw MalformedPacket("duplicate device " + ds.device);
        pkt.statuses.push_back(std::move(ds));
    }
    return pkt;
}

std::string serialize_response(const ResponsePacket& pkt) {
    auto code = to_int(pkt.code);
    if (code != 200 && code != 201 && code != 404)
        throw InvalidField("response code " + std::to_string(code));
    std::string out = std::to_string(code);
    for (std::size_t i = 0; i < pkt.statuses.size(); ++i) {
        const auto& ds = pkt.statuses[i];
        if (!is_valid_device_id(ds.device)) throw InvalidField("device id: '" + ds.device + "'");
        if (ds.status < 0) throw InvalidField("negative status for " + ds.device);
        for (std::size_t j = 0; j < i; ++j)
            if (pkt.statuses[j].device == ds.device) throw InvalidField("duplicate device " + ds.device);
        out += ' ';
        out += ds.device;
        out += ':';
        out += std::to_string(ds.status);
    }
    return out;
}

}  // namespace smarthub
