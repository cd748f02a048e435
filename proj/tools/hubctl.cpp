// hubctl: command-line client for the hub.
//
// Exit codes: 0 = app code 200/201, 4 = app code 404, 2 = transport error,
// 1 = usage or client-side error.

#include "smarthub/client.hpp"
#include "smarthub/phrase.hpp"
#include "smarthub/sensor_sim.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <limits>

using namespace smarthub;

namespace {

void print_table(const ResponsePacket& pkt) {
    std::size_t width = 6;
    for (const auto& s : pkt.statuses) width = std::max(width, s.device.size());
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << "DEVICE" << "STATUS\n";
    for (const auto& s : pkt.statuses)
        std::cout << std::left << std::setw(static_cast<int>(width) + 2) << s.device << s.status << "\n";
}

int report(const ResponsePacket& pkt, bool show_table = true) {
    switch (pkt.code) {
    case ResponseCode::Ok:
        if (show_table) print_table(pkt);
        else std::cout << "ok (200)\n";
        break;
    case ResponseCode::PasswordChanged:
        std::cout << "password changed (201)\n";
        break;
    case ResponseCode::Rejected:
        std::cout << "request rejected (404)\n";
        break;
    }
    return exit_code_for(pkt.code);
}

int report_sim(const ClientReply& reply) {
    if (reply.packet.code == ResponseCode::Ok) {
        std::cout << "ok (200)\n";
        return 0;
    }
    std::cout << "rejected (404)";
    if (reply.error) std::cout << ": " << *reply.error;
    std::cout << "\n";
    return 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smart home hub client"};
    app.require_subcommand(1);

    ClientConfig cfg;
    if (const char* env = std::getenv("HUB_PASSWORD")) cfg.password = env;
    app.add_option("--server", cfg.server_url, "Hub URL, http://host:port")->capture_default_str();
    app.add_option("--password", cfg.password, "Hub password (default: $HUB_PASSWORD or 1234)");

    auto* status = app.add_subcommand("status", "Show every device status");

    std::string target, action;
    auto* set = app.add_subcommand("set", "Send <target> <action>, e.g. set Light_1 On");
    set->add_option("target", target)->required();
    set->add_option("action", action)->required();

    std::string new_password;
    auto* passwd = app.add_subcommand("passwd", "Change the hub password");
    passwd->add_option("new", new_password)->required();

    auto* siren_off = app.add_subcommand("siren-off", "Silence the siren");

    std::string auto_state;
    auto* autom = app.add_subcommand("auto", "Automatic mode on|off");
    autom->add_option("state", auto_state)->required()->check(CLI::IsMember({"on", "off"}));

    std::vector<std::string> phrase_words;
    auto* say = app.add_subcommand("say", "Free-text command, e.g. say turn on the fan");
    say->add_option("phrase", phrase_words)->required();

    std::string sensor;
    std::int64_t value = 0;
    auto* reading = app.add_subcommand("inject-reading", "Simulate a sensor reading");
    reading->add_option("sensor", sensor)->required();
    reading->add_option("value", value)->required();

    std::string kind_name, location;
    auto* event = app.add_subcommand("inject-event", "Simulate a hazard: Fire|Smoke|Gas|Intrusion <location>");
    event->add_option("kind", kind_name)->required()->check(CLI::IsMember({"Fire", "Smoke", "Gas", "Intrusion"}));
    event->add_option("location", location)->required();

    std::string trace_path;
    double speed = 1.0;
    auto* replay_cmd = app.add_subcommand("replay", "Replay a sensor trace CSV against the hub");
    replay_cmd->add_option("trace", trace_path)->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--speed", speed, "Time multiplier; 'inf' for no waiting")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        HubClient client(cfg);

        if (*status) {
            auto pkt = client.status();
            if (pkt.code == ResponseCode::Rejected) {
                std::cout << "authentication failed (404)\n";
                return 4;
            }
            return report(pkt);
        }
        if (*set) return report(client.command(target, action), false);
        if (*passwd) return report(client.change_password(new_password));
        if (*siren_off) return report(client.command("Siren", "Off"), false);
        if (*autom) return report(client.command("Auto", auto_state == "on" ? "On" : "Off"), false);
        if (*say) {
            std::string phrase;
            for (const auto& w : phrase_words) phrase += (phrase.empty() ? "" : " ") + w;
            PhraseCommand mapped;
            try {
                mapped = map_phrase(phrase);
            } catch (const UnmappedPhrase& e) {
                std::cout << e.what() << "\n";
                return kExitUsageError;
            }
            std::cout << "-> " << mapped.target << "_" << mapped.action << "\n";
            return report(client.command(mapped.target, mapped.action), mapped.target == "Status");
        }
        if (*reading) return report_sim(client.inject_reading(sensor, value));
        if (*event) return report_sim(client.inject_event(*parse_hazard_kind(kind_name), location));
        if (*replay_cmd) {
            auto trace = load_trace(trace_path);
            HttpSimSink sink(client);
            WallPacer pacer(speed);
            auto summary = replay(trace, sink, pacer);
            std::cout << "applied " << summary.applied << ", errors " << summary.errors << "\n";
            return summary.errors == 0 ? 0 : 4;
        }
    } catch (const TransportError& e) {
        std::cerr << "hubctl: " << e.what() << "\n";
        return kExitTransportError;
    } catch (const InvalidField& e) {
        std::cerr << "hubctl: cannot encode packet: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const TraceParseError& e) {
        std::cerr << "hubctl: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hubctl: " << e.what() << "\n";
        return kExitUsageError;
    }
    return kExitUsageError;
}
