#include "smarthub/persistence.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace smarthub {

namespace {

constexpr std::string_view kDevicePrefix = "device.";

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty() || s.front() == '+') return false;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && end == s.data() + s.size();
}

[[noreturn]] void corrupt(const std::string& why) { throw CorruptStateFile("corrupt state file: " + why); }

std::atomic<unsigned> g_temp_counter{0};

void write_all(int fd, std::string_view data, const std::filesystem::path& tmp) {
    while (!data.empty()) {
        auto n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            throw IoFailure("write " + tmp.string() + ": " + std::strerror(errno));
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

}  // namespace

bool is_valid_password(std::string_view pw) { return is_valid_auth(pw) && is_valid_action(pw); }

std::string serialize_state(const HubState& state) {
    std::ostringstream out;
    int keys = 0;
    auto put = [&](std::string_view key, const auto& value) {
        out << key << " = " << value << '\n';
        ++keys;
    };
    out << "# smarthub state\n";
    put("version", 1);
    put("password", state.password);
    put("auto", state.registry.auto_mode() ? 1 : 0);
    put("fan_speed", state.registry.fan_speed());
    for (const auto& d : state.registry.devices()) put(std::string(kDevicePrefix) + d.id, d.status);
    out << "end = " << keys << '\n';
    return out.str();
}

HubState parse_state(std::string_view text, const std::vector<DeviceSpec>& roster) {
    std::map<std::string, std::string, std::less<>> values;
    std::vector<std::string> device_order;
    int keys = 0;
    bool ended = false;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) corrupt("last line is not terminated");
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (ended) corrupt("content after end marker");

        auto eq = line.find(" = ");
        if (eq == std::string_view::npos || eq == 0) corrupt("line " + std::to_string(line_no) + " is not 'key = value'");
        std::string key(line.substr(0, eq));
        std::string value(line.substr(eq + 3));

        if (key == "end") {
            std::int64_t n = 0;
            if (!parse_int(value, n) || n != keys) corrupt("end marker count mismatch");
            ended = true;
            continue;
        }
        if (!values.emplace(key, value).second) corrupt("duplicate key '" + key + "'");
        if (key.starts_with(kDevicePrefix)) device_order.push_back(key);
        ++keys;
    }
    if (!ended) corrupt("missing end marker (truncated?)");

    auto require = [&](std::string_view key) -> const std::string& {
        auto it = values.find(key);
        if (it == values.end()) corrupt("missing key '" + std::string(key) + "'");
        return it->second;
    };
    auto require_int = [&](std::string_view key) {
        std::int64_t v = 0;
        if (!parse_int(require(key), v)) corrupt("'" + std::string(key) + "' is not an integer");
        return v;
    };

    if (require_int("version") != 1) corrupt("unsupported version");

    HubState state{std::string(require("password")), Registry(roster)};
    if (!is_valid_password(state.password)) corrupt("invalid password field");

    auto autom = require_int("auto");
    if (autom != 0 && autom != 1) corrupt("auto must be 0 or 1");
    state.registry.set_auto_mode(autom == 1);
    try {
        state.registry.set_fan_speed(static_cast<int>(require_int("fan_speed")));
        for (const auto& key : device_order) {
            auto id = std::string_view(key).substr(kDevicePrefix.size());
            std::int64_t v = 0;
            if (!parse_int(values.find(key)->second, v)) corrupt("status of '" + std::string(id) + "' is not an integer");
            if (!state.registry.find(id)) {
                spdlog::warn("state: ignoring status for '{}', not in roster", id);
                continue;
            }
            state.registry.restore_status(id, v);
        }
    } catch (const DeviceError& e) {
        corrupt(e.what());
    }
    return state;
}

BootResult boot(const std::filesystem::path& path, const std::vector<DeviceSpec>& roster) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        if (ec) throw CorruptStateFile("cannot stat " + path.string() + ": " + ec.message());
        return {HubState{std::string(kDefaultPassword), Registry(roster)}, true};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptStateFile("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return {parse_state(buf.str(), roster), false};
}

void persist(const HubState& state, const std::filesystem::path& path) {
    const auto text = serialize_state(state);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(g_temp_counter.fetch_add(1));

    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
    if (fd < 0) throw IoFailure("open " + tmp.string() + ": " + std::strerror(errno));
    try {
        write_all(fd, text, tmp);
        if (::fsync(fd) != 0) throw IoFailure("fsync " + tmp.string() + ": " + std::strerror(errno));
    } catch (...) {
        ::close(fd);
        ::unlink(tmp.c_str());
        throw;
    }
    ::close(fd);

    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        ::unlink(tmp.c_str());
        throw IoFailure("rename to " + path.string() + ": " + ec.message());
    }
}

}  // namespace smarthub
