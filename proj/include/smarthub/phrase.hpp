#pragma once

// Text stand-in for voice commands. Keyword table:
//
//   actions:  on|enable|activate    -> On
//             off|disable|deactivate|silence -> Off
//   devices:  light|lights|lamp N   -> Light_N
//             plug|socket|outlet N  -> Plug_N
//             fan                   -> Fan
//             heater|heating        -> Heater
//             siren|alarm           -> Siren
//             auto|automatic        -> Auto
//   fan speed N                     -> FanSpeed_N (N = 0..3)
//   status                          -> Status_All
//
// N is a digit, a number word (one..four) or an ordinal (first..fourth);
// N may come before or after the device word; a light or plug without N
// means 1.

#include <stdexcept>
#include <string>
#include <string_view>

namespace smarthub {

class UnmappedPhrase : public std::runtime_error {
public:
    explicit UnmappedPhrase(const std::string& phrase)
        : std::runtime_error("no command captured, try again"), phrase_(phrase) {}
    const std::string& phrase() const noexcept { return phrase_; }

private:
    std::string phrase_;
};

struct PhraseCommand {
    std::string target;
    std::string action;

    bool operator==(const PhraseCommand&) const = default;
};

/// Throws UnmappedPhrase when no single device and action can be read
/// from the phrase.
PhraseCommand map_phrase(std::string_view phrase);

}  // namespace smarthub
