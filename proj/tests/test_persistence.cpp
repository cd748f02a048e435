#include "smarthub/persistence.hpp"

#include "temp_dir.hpp"

#include <doctest.h>

#include <fstream>
#include <thread>

using namespace smarthub;

namespace {

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write(const std::filesystem::path& p, const std::string& s) { std::ofstream(p) << s; }

HubState busy_state() {
    HubState s;
    s.password = "9876";
    apply_action_in_place(s.registry, "Light_1", "On");
    apply_action_in_place(s.registry, "FanSpeed", "2");
    apply_action_in_place(s.registry, "Auto", "On");
    s.registry.set_sensor("Temp_Living", -12);
    return s;
}

}  // namespace

TEST_CASE("fresh boot uses the default password") {
    test::TempDir dir;
    auto r = boot(dir / "state.txt", default_roster());
    CHECK(r.fresh);
    CHECK(r.state.password == "1234");
    CHECK(r.state.registry == Registry());
}

TEST_CASE("persist then boot restores the state exactly") {
    test::TempDir dir;
    auto path = dir / "state.txt";
    auto s = busy_state();
    persist(s, path);
    auto r = boot(path, default_roster());
    CHECK_FALSE(r.fresh);
    CHECK(r.state == s);
    CHECK(snapshot(r.state.registry) == snapshot(s.registry));
    // No temp files left behind.
    CHECK(std::distance(std::filesystem::directory_iterator(dir.path()), {}) == 1);
}

TEST_CASE("state file is human-readable key-value text") {
    auto text = serialize_state(busy_state());
    CHECK(text.find("password = 9876\n") != std::string::npos);
    CHECK(text.find("device.Light_1 = 1\n") != std::string::npos);
    CHECK(text.find("fan_speed = 2\n") != std::string::npos);
    CHECK(text.find("device.Temp_Living = -12\n") != std::string::npos);
    CHECK(text.ends_with("end = 13\n"));
}

TEST_CASE("every truncation of a state file is rejected") {
    test::TempDir dir;
    auto path = dir / "state.txt";
    auto text = serialize_state(busy_state());
    for (std::size_t n = 1; n < text.size(); ++n) {
        write(path, text.substr(0, n));
        CHECK_THROWS_AS(boot(path, default_roster()), CorruptStateFile);
    }
    write(path, "");
    CHECK_THROWS_AS(boot(path, default_roster()), CorruptStateFile);
}

TEST_CASE("malformed content is CorruptStateFile, not a silent reset") {
    const auto good = serialize_state(HubState{});
    auto replace = [&](const std::string& from, const std::string& to) {
        auto s = good;
        s.replace(s.find(from), from.size(), to);
        return s;
    };
    for (const auto& bad : {
             replace("version = 1", "version = 2"),
             replace("password = 1234", "password = 12$4"),
             replace("password = 1234", "password = 12_4"),
             replace("auto = 0", "auto = 3"),
             replace("fan_speed = 0", "fan_speed = 7"),
             replace("device.Light_1 = 0", "device.Light_1 = 2"),
             replace("device.Light_1 = 0", "device.Light_1 = x"),
             replace("device.Light_1 = 0", "device.Light_1=0"),
             replace("auto = 0\n", "auto = 0\nauto = 0\n"),
             replace("end = 13", "end = 12"),
             good + "device.Light_2 = 1\n",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_state(bad, default_roster()), CorruptStateFile);
    }
}

TEST_CASE("statuses for devices no longer in the roster are dropped") {
    auto text = serialize_state(busy_state());
    std::vector<DeviceSpec> smaller{{"Light_1", DeviceKind::Switch, ""}, {"Siren", DeviceKind::Siren, ""}};
    auto s = parse_state(text, smaller);
    CHECK(s.password == "9876");
    CHECK(s.registry.find("Light_1")->status == 1);
    CHECK(s.registry.devices().size() == 2);
}

TEST_CASE("unwritable path is IoFailure") {
    test::TempDir dir;
    CHECK_THROWS_AS(persist(HubState{}, dir / "missing" / "state.txt"), IoFailure);
    // A directory where the file should be: rename fails.
    std::filesystem::create_directory(dir / "occupied");
    std::filesystem::create_directory(dir / "occupied" / "x");
    CHECK_THROWS_AS(persist(HubState{}, dir / "occupied"), IoFailure);
}

TEST_CASE("concurrent persists never interleave") {
    test::TempDir dir;
    auto path = dir / "state.txt";
    std::vector<HubState> states(8);
    for (std::size_t i = 0; i < states.size(); ++i) states[i].password = "pw" + std::to_string(i);

    std::vector<std::thread> writers;
    for (const auto& s : states)
        writers.emplace_back([&, s] {
            for (int k = 0; k < 50; ++k) persist(s, path);
        });
    for (auto& w : writers) w.join();

    auto text = read(path);
    bool matches_one = false;
    for (const auto& s : states) matches_one |= text == serialize_state(s);
    CHECK(matches_one);
    CHECK(std::distance(std::filesystem::directory_iterator(dir.path()), {}) == 1);
}
