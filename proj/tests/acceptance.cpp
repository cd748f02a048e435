// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failures. Everything runs offline: fake clock, capture mail,
// loopback HTTP.

#include "smarthub/http_server.hpp"
#include "smarthub/hub.hpp"
#include "smarthub/sensor_sim.hpp"

#include "generators.hpp"
#include "reference_models.hpp"
#include "temp_dir.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

using namespace smarthub;
using namespace std::chrono_literals;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail = what;
        pass = false;
    }
};

struct Bench {
    test::TempDir dir;
    std::shared_ptr<FakeClock> clock = std::make_shared<FakeClock>();
    std::shared_ptr<CaptureTransport> mail = std::make_shared<CaptureTransport>();

    HubOptions options() const {
        HubOptions o;
        o.state_path = dir / "state.txt";
        o.automation = {{ThermostatRule{}}, {}};
        o.mail_retry = {3, 1ms};
        o.alarm.recipients = {"owner@example.com"};
        return o;
    }
    std::unique_ptr<Hub> boot() const { return std::make_unique<Hub>(options(), clock, mail); }
};

std::size_t state_hash(const Hub& hub) { return std::hash<std::string>{}(serialize_state(hub.state())); }

// Hand-written model of the default home, independent of Registry.
struct ModelHome {
    std::vector<std::string> order{"Light_1", "Light_2", "Plug_1", "Fan", "Heater", "Siren",
                                   "Temp_Living", "Gas_Kitchen", "Motion_Garage"};
    std::map<std::string, std::int64_t> status;
    std::int64_t fan_speed = 0;
    std::int64_t auto_mode = 0;

    ModelHome() {
        for (const auto& id : order) status[id] = 0;
    }

    static bool actuator(const std::string& id) {
        return id == "Light_1" || id == "Light_2" || id == "Plug_1" || id == "Fan" || id == "Heater" || id == "Siren";
    }

    bool apply(const std::string& target, const std::string& action) {
        if (target == "Status") return action == "All";
        if (target == "Auto") {
            if (action != "On" && action != "Off") return false;
            auto_mode = action == "On";
            return true;
        }
        if (target == "FanSpeed") {
            if (action.size() != 1 || action[0] < '0' || action[0] > '3') return false;
            fan_speed = action[0] - '0';
            return true;
        }
        if (!actuator(target) || (action != "On" && action != "Off")) return false;
        status[target] = action == "On";
        return true;
    }

    std::string wire() const {
        std::string out = "200";
        for (const auto& id : order)
            out += " " + id + ":" + std::to_string(status.at(id) + (id == "Temp_Living" ? 50 : 0));
        return out + " FanSpeed:" + std::to_string(fan_speed) + " Auto:" + std::to_string(auto_mode);
    }
};

const std::vector<std::string> kTargets{"Light_1", "Light_2", "Plug_1", "Fan", "Heater", "Siren", "FanSpeed",
                                        "Auto", "Status", "Temp_Living", "Ghost", "Light_3"};
const std::vector<std::string> kActions{"On", "Off", "All", "0", "1", "2", "3", "4", "Dim"};

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
    return v[rng() % v.size()];
}

// ---------------------------------------------------------------------------

Verdict codec_round_trip() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();

    struct Doc {
        const char* raw;
        CommandPacket cmd;
    };
    for (const auto& d : {Doc{"$1234$Fan_On", {"1234", "Fan", "On"}}, Doc{"$1234$FanSpeed_2", {"1234", "FanSpeed", "2"}}}) {
        v.require(parse_command(d.raw) == d.cmd, std::string("parse ") + d.raw);
        v.require(serialize_command(d.cmd) == d.raw, std::string("serialize ") + d.raw);
    }
    v.require(parse_response("200 Light_1:1") == ResponsePacket{ResponseCode::Ok, {{"Light_1", 1}}}, "parse 200 Light_1:1");
    v.require(serialize_response(parse_response("200 Light_1:1")) == "200 Light_1:1", "bytes 200 Light_1:1");
    v.require(parse_response("404") == ResponsePacket{ResponseCode::Rejected, {}}, "parse 404");
    v.require(serialize_response(parse_response("404")) == "404", "bytes 404");

    std::mt19937 rng(20240601);
    const int n = 10000;
    for (int i = 0; i < n && v.pass; ++i) {
        auto cmd = test::random_command(rng);
        auto wire = serialize_command(cmd);
        v.require(parse_command(wire) == cmd, "command " + wire);
        v.require(serialize_command(parse_command(wire)) == wire, "command bytes " + wire);
        auto rsp = test::random_response(rng);
        auto rwire = serialize_response(rsp);
        v.require(parse_response(rwire) == rsp, "response " + rwire);
        v.require(serialize_response(parse_response(rwire)) == rwire, "response bytes " + rwire);
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    v.require(took < 5s, "took " + std::to_string(took.count()) + " s");
    if (v.pass) v.detail = std::to_string(n) + " commands + " + std::to_string(n) + " responses in " +
                           std::to_string(took.count()) + " s";
    return v;
}

Verdict auth_gate() {
    Verdict v;
    Bench b;
    auto hub = b.boot();
    std::mt19937 rng(99);

    const auto before = state_hash(*hub);
    int rejected = 0;
    for (int i = 0; i < 1000; ++i) {
        std::string auth;
        do auth = test::random_token(rng, "$_", 6);
        while (auth == "1234");
        auto target = i % 10 == 0 ? std::string("ChangePass") : pick(rng, kTargets);
        auto action = i % 10 == 0 ? std::string("5555") : pick(rng, kActions);
        rejected += serialize_response(hub->handle_command("$" + auth + "$" + target + "_" + action)) == "404";
    }
    v.require(rejected == 1000, std::to_string(rejected) + "/1000 rejected");
    v.require(state_hash(*hub) == before, "registry hash changed");

    // Control group with the right credential follows the model.
    ModelHome model;
    int mutated = 0;
    for (int i = 0; i < 1000 && v.pass; ++i) {
        auto target = pick(rng, kTargets);
        auto action = pick(rng, kActions);
        auto h0 = state_hash(*hub);
        auto got = serialize_response(hub->handle_command("$1234$" + target + "_" + action));
        auto want = model.apply(target, action) ? model.wire() : "404";
        v.require(got == want, target + "_" + action + ": got '" + got + "' want '" + want + "'");
        mutated += state_hash(*hub) != h0;
    }
    v.require(mutated > 0, "control group never mutated");
    if (v.pass) v.detail = "1000/1000 rejected, hash stable; control group mutated " + std::to_string(mutated) + " times";
    return v;
}

Verdict password_change() {
    Verdict v;
    Bench b;
    {
        auto hub = b.boot();
        for (const char* raw : {"$1234$Ghost_On", "$1234$Light_1_Dim", "$1234$FanSpeed_9", "$1234$Status_Some"})
            v.require(serialize_response(hub->handle_command(raw)) == "404", std::string(raw) + " not 404");
        v.require(serialize_response(hub->handle_command("$1234$ChangePass_9876")) == "201", "ChangePass not 201");
        v.require(hub->handle_command("$1234$Status_All").code == ResponseCode::Rejected, "old password still works");
        v.require(hub->handle_command("$9876$Status_All").code == ResponseCode::Ok, "new password refused");
    }
    auto hub = b.boot();
    v.require(hub->handle_command("$1234$Status_All").code == ResponseCode::Rejected, "old password works after restart");
    v.require(hub->handle_command("$9876$Status_All").code == ResponseCode::Ok, "new password lost on restart");
    if (v.pass) v.detail = "404 on unknown target/action, 201 on change, 9876 only, survives restart";
    return v;
}

Verdict sync_contract() {
    Verdict v;
    Bench b;
    auto hub = b.boot();
    std::mt19937 rng(50);

    Registry fold;
    ModelHome model;
    int accepted = 0;
    // Mostly valid commands; every seventh is one the hub must refuse.
    const std::vector<std::string> switches{"Light_1", "Light_2", "Plug_1", "Fan", "Heater", "Siren"};
    for (int i = 0; i < 50; ++i) {
        std::string target, action;
        if (i % 7 == 6) {
            target = pick(rng, std::vector<std::string>{"Ghost", "Temp_Living", "FanSpeed"});
            action = target == "FanSpeed" ? "4" : "On";
        } else if (i % 5 == 4) {
            target = "FanSpeed";
            action = std::to_string(rng() % 4);
        } else if (i % 11 == 10) {
            target = "Auto";
            action = rng() % 2 ? "On" : "Off";
        } else {
            target = pick(rng, switches);
            action = rng() % 2 ? "On" : "Off";
        }
        auto r = hub->handle_command("$1234$" + target + "_" + action);
        if (r.code != ResponseCode::Ok) continue;
        ++accepted;
        fold = apply_action(fold, target, action).changed;
        model.apply(target, action);
    }
    auto status = hub->handle_command("$1234$Status_All");
    v.require(status.statuses == wire_snapshot(fold), "Status_All differs from the apply_action fold");
    v.require(serialize_response(status) == model.wire(), "Status_All differs from the model");
    v.require(accepted == 43, std::to_string(accepted) + " accepted, script has 43 valid commands");
    if (v.pass) v.detail = std::to_string(accepted) + "/50 accepted; fold and model agree";
    return v;
}

Verdict alarm_end_to_end() {
    Verdict v;
    {
        Bench b;
        auto hub = b.boot();
        hub->raise_alarm(HazardKind::Fire, "Kitchen");
        auto snap = serialize_response(hub->handle_command("$1234$Status_All"));
        v.require(snap.find(" Siren:1 ") != std::string::npos, "siren not on after one gate turn");
        hub->raise_alarm(HazardKind::Fire, "Kitchen");  // inside the debounce window
        hub->flush_mail();
        auto sent = b.mail->sent();
        v.require(sent.size() == 1, std::to_string(sent.size()) + " emails captured");
        if (sent.size() == 1) {
            v.require(sent[0].subject == "Smart Home Alert", "subject '" + sent[0].subject + "'");
            v.require(sent[0].body == "Fire Detected in the Kitchen", "body '" + sent[0].body + "'");
        }

        // Fake clock in 1 ms ticks: on at 299.999 s, off at exactly 300.000 s.
        const auto raised = b.clock->now();
        b.clock->set(raised + 299999ms);
        hub->tick();
        v.require(hub->registry().find("Siren")->status == 1, "cleared before 300 s");
        b.clock->set(raised + 300000ms);
        auto report = hub->tick();
        v.require(report.siren_auto_off && hub->registry().find("Siren")->status == 0, "not cleared at 300 s");
    }
    {
        Bench b;
        auto hub = b.boot();
        hub->raise_alarm(HazardKind::Smoke, "Hall");
        auto r = hub->handle_command("$1234$Siren_Off");
        v.require(serialize_response(r).find(" Siren:0 ") != std::string::npos, "Siren_Off did not clear");
        v.require(!hub->siren_latch().on, "latch survived Siren_Off");
        b.clock->advance(300s);
        v.require(!hub->tick().siren_auto_off, "auto-off fired after manual release");
    }
    if (v.pass) v.detail = "Siren:1 immediately, 1 email, cleared at 300.000 s, Siren_Off immediate";
    return v;
}

Verdict thermostat() {
    Verdict v;
    const ThermostatRule rule;
    auto raw = test::sawtooth_trace(1000, 17.0, 27.0, 45);
    std::vector<double> temps;
    for (double t : raw) temps.push_back(static_cast<double>(std::lround(t)));
    const auto expected = test::reference_thermostat(temps, rule.setpoint, rule.hysteresis, rule.min_dwell.count(), 1.0);
    const auto no_dwell = test::reference_thermostat(temps, rule.setpoint, rule.hysteresis, 0.0, 1.0);
    v.require(expected != no_dwell, "trace does not exercise min_dwell");

    auto run = [&](bool auto_on, std::size_t& actions) {
        Bench b;
        auto hub = b.boot();
        if (auto_on) hub->handle_command("$1234$Auto_On");
        const auto t0 = b.clock->now();
        std::vector<int> flips;
        actions = 0;
        for (std::size_t i = 0; i < temps.size(); ++i) {
            b.clock->set(t0 + std::chrono::seconds(i));
            hub->set_sensor("Temp_Living", static_cast<std::int64_t>(temps[i]));
            auto report = hub->tick();
            actions += report.actions.size();
            if (!report.actions.empty()) flips.push_back(static_cast<int>(i));
        }
        return flips;
    };

    std::size_t actions = 0;
    auto flips = run(true, actions);
    v.require(flips == expected, "flip sequence differs from the reference (" + std::to_string(flips.size()) + " vs " +
                                     std::to_string(expected.size()) + ")");
    int violations = 0;
    for (std::size_t i = 1; i < flips.size(); ++i) violations += flips[i] - flips[i - 1] < rule.min_dwell.count();
    v.require(violations == 0, std::to_string(violations) + " dwell violations");

    std::size_t off_actions = 0;
    run(false, off_actions);
    v.require(off_actions == 0, std::to_string(off_actions) + " actions with auto mode off");
    if (v.pass) v.detail = std::to_string(flips.size()) + " flips match the reference, 0 dwell violations, 0 actions when off";
    return v;
}

struct Served {
    Bench bench;
    std::unique_ptr<Hub> hub = bench.boot();
    HttpServer server{*hub};
    int port = server.bind("127.0.0.1", 0);
    std::thread thread{[this] { server.serve(); }};

    ~Served() {
        server.stop();
        thread.join();
    }
};

Verdict get_post_equivalence() {
    Verdict v;
    Served a;
    Served b;
    v.require(a.port > 0 && b.port > 0, "bind failed");
    if (!v.pass) return v;
    httplib::Client post_client("127.0.0.1", a.port);
    httplib::Client get_client("127.0.0.1", b.port);

    // Same sequence to two identical hubs, one by POST and one by GET.
    std::mt19937 rng(7);
    std::vector<std::string> packets{"$1234$Fan_On", "$1234$FanSpeed_2", "$1234$ChangePass_9876", "$1234$Fan_Off",
                                     "$9876$Light_1_On", "", "garbage", "$9876$Status_All", "$x y$a_b", "$9876$a&b=c_On"};
    for (int i = 0; i < 200; ++i) {
        auto auth = i % 3 ? std::string("9876") : test::random_token(rng, "$", 5);
        packets.push_back("$" + auth + "$" + pick(rng, kTargets) + "_" + pick(rng, kActions));
    }
    std::size_t compared = 0;
    for (const auto& p : packets) {
        auto post = post_client.Post("/cmd", p, "text/plain");
        auto get = get_client.Get("/cmd?packet=" + httplib::detail::encode_query_param(p));
        if (!post || !get) {
            v.require(false, "request failed for '" + p + "'");
            break;
        }
        v.require(post->body == get->body, "bodies differ for '" + p + "'");
        ++compared;
    }
    // And both methods against the same hub for a read-only packet.
    auto p1 = post_client.Post("/cmd", "$9876$Status_All", "text/plain");
    auto g1 = post_client.Get("/cmd?packet=%249876%24Status_All");
    v.require(p1 && g1 && p1->body == g1->body, "same-hub bodies differ");
    if (v.pass) v.detail = std::to_string(compared + 1) + " packets, byte-identical bodies";
    return v;
}

}  // namespace

int main() {
    spdlog::set_level(spdlog::level::off);
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"codec round trip", codec_round_trip},
        {"auth gate", auth_gate},
        {"password change and 404 semantics", password_change},
        {"status sync after 50 actions", sync_contract},
        {"alarm end to end", alarm_end_to_end},
        {"thermostat against reference simulator", thermostat},
        {"GET/POST equivalence", get_post_equivalence},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s: %s (%s)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
        failures += !v.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
