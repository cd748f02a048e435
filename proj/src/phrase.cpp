#include "smarthub/phrase.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

namespace smarthub {

namespace {

std::vector<std::string> words(std::string_view phrase) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : phrase) {
        auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) {
            cur += static_cast<char>(std::tolower(uc));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::optional<int> number_word(const std::string& w) {
    static const std::vector<std::vector<std::string>> table{
        {"0", "zero"},
        {"1", "one", "first"},
        {"2", "two", "second"},
        {"3", "three", "third"},
        {"4", "four", "fourth"},
    };
    for (std::size_t n = 0; n < table.size(); ++n)
        if (std::find(table[n].begin(), table[n].end(), w) != table[n].end()) return static_cast<int>(n);
    return std::nullopt;
}

bool is_one_of(const std::string& w, std::initializer_list<std::string_view> set) {
    return std::find(set.begin(), set.end(), w) != set.end();
}

// First number at or after position i.
std::optional<int> number_after(const std::vector<std::string>& ws, std::size_t i) {
    for (; i < ws.size(); ++i)
        if (auto n = number_word(ws[i])) return n;
    return std::nullopt;
}

// Ordinal directly following a device word ("light two", "light number 2").
std::optional<int> ordinal_at(const std::vector<std::string>& ws, std::size_t i) {
    if (i < ws.size() && ws[i] == "number") ++i;
    if (i < ws.size()) return number_word(ws[i]);
    return std::nullopt;
}

// "light two" or "second light"; 1 when neither is given.
int device_number(const std::vector<std::string>& ws, std::size_t i) {
    if (auto n = ordinal_at(ws, i + 1)) return *n;
    if (i > 0)
        if (auto n = number_word(ws[i - 1])) return *n;
    return 1;
}

}  // namespace

PhraseCommand map_phrase(std::string_view phrase) {
    const auto ws = words(phrase);

    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (ws[i] != "speed") continue;
        auto n = number_after(ws, i + 1);
        if (!n || *n > 3) throw UnmappedPhrase(std::string(phrase));
        return {"FanSpeed", std::to_string(*n)};
    }

    std::optional<std::string> action;
    std::optional<std::string> target;
    bool ambiguous = false;
    auto set_action = [&](std::string a) {
        if (action && *action != a) ambiguous = true;
        action = std::move(a);
    };
    auto set_target = [&](std::string t) {
        if (target && *target != t) ambiguous = true;
        target = std::move(t);
    };

    for (std::size_t i = 0; i < ws.size(); ++i) {
        const auto& w = ws[i];
        if (is_one_of(w, {"on", "enable", "activate"})) set_action("On");
        else if (is_one_of(w, {"off", "disable", "deactivate", "silence"})) set_action("Off");
        else if (is_one_of(w, {"light", "lights", "lamp"}))
            set_target("Light_" + std::to_string(device_number(ws, i)));
        else if (is_one_of(w, {"plug", "socket", "outlet"}))
            set_target("Plug_" + std::to_string(device_number(ws, i)));
        else if (w == "fan") set_target("Fan");
        else if (is_one_of(w, {"heater", "heating"})) set_target("Heater");
        else if (is_one_of(w, {"siren", "alarm"})) set_target("Siren");
        else if (is_one_of(w, {"auto", "automatic"})) set_target("Auto");
        else if (w == "status") set_target("Status");
    }

    if (ambiguous || !target) throw UnmappedPhrase(std::string(phrase));
    if (*target == "Status") {
        if (action) throw UnmappedPhrase(std::string(phrase));
        return {"Status", "All"};
    }
    if (!action) throw UnmappedPhrase(std::string(phrase));
    if (*target == "Light_0" || *target == "Plug_0") throw UnmappedPhrase(std::string(phrase));
    return {*target, *action};
}

}  // namespace smarthub
