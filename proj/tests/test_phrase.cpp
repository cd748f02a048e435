#include "smarthub/packet.hpp"
#include "smarthub/phrase.hpp"

#include <doctest.h>

#include <random>

using namespace smarthub;

TEST_CASE("example phrases") {
    CHECK(map_phrase("turn on the fan") == PhraseCommand{"Fan", "On"});
    CHECK(map_phrase("turn on light one") == PhraseCommand{"Light_1", "On"});
    CHECK(map_phrase("Switch OFF the second lamp!") == PhraseCommand{"Light_2", "Off"});
    CHECK(map_phrase("light number 2 on") == PhraseCommand{"Light_2", "On"});
    CHECK(map_phrase("lights off") == PhraseCommand{"Light_1", "Off"});
    CHECK(map_phrase("outlet 3 on") == PhraseCommand{"Plug_3", "On"});
    CHECK(map_phrase("set fan speed to three") == PhraseCommand{"FanSpeed", "3"});
    CHECK(map_phrase("fan speed 0") == PhraseCommand{"FanSpeed", "0"});
    CHECK(map_phrase("silence the alarm") == PhraseCommand{"Siren", "Off"});
    CHECK(map_phrase("enable automatic mode") == PhraseCommand{"Auto", "On"});
    CHECK(map_phrase("heating on please") == PhraseCommand{"Heater", "On"});
    CHECK(map_phrase("what is the status") == PhraseCommand{"Status", "All"});
}

TEST_CASE("phrases that capture nothing") {
    for (const char* p : {"make me coffee", "", "on", "fan", "turn the fan on and off", "fan and heater on",
                          "fan speed 4", "fan speed", "light zero on", "status on"}) {
        CAPTURE(p);
        CHECK_THROWS_AS(map_phrase(p), UnmappedPhrase);
    }
    try {
        map_phrase("make me coffee");
    } catch (const UnmappedPhrase& e) {
        CHECK(std::string(e.what()) == "no command captured, try again");
        CHECK(e.phrase() == "make me coffee");
    }
}

TEST_CASE("every mapped phrase yields a packet the codec accepts") {
    const std::vector<std::string> vocab{"turn", "on", "off", "the", "light", "lamp", "plug", "fan", "speed",
                                         "two", "3", "first", "heater", "siren", "alarm", "auto", "status",
                                         "number", "please", "!", "kitchen", "enable", "silence"};
    std::mt19937 rng(7);
    int mapped = 0;
    for (int i = 0; i < 5000; ++i) {
        std::string phrase;
        auto n = 1 + rng() % 6;
        for (std::size_t k = 0; k < n; ++k) phrase += vocab[rng() % vocab.size()] + " ";
        try {
            auto cmd = map_phrase(phrase);
            ++mapped;
            CommandPacket pkt{"1234", cmd.target, cmd.action};
            CAPTURE(phrase);
            CHECK(parse_command(serialize_command(pkt)) == pkt);
        } catch (const UnmappedPhrase&) {
        }
    }
    CHECK(mapped > 100);
}
