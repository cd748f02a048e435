#include "smarthub/alarm.hpp"

#include <spdlog/spdlog.h>

#include <array>

namespace smarthub {

namespace {

constexpr std::array<std::pair<HazardKind, std::string_view>, 4> kHazardNames{{
    {HazardKind::Fire, "Fire"},
    {HazardKind::Smoke, "Smoke"},
    {HazardKind::Gas, "Gas"},
    {HazardKind::Intrusion, "Intrusion"},
}};

}  // namespace

std::string_view to_string(HazardKind kind) {
    for (auto [k, name] : kHazardNames)
        if (k == kind) return name;
    return "Unknown";
}

std::optional<HazardKind> parse_hazard_kind(std::string_view name) {
    for (auto [k, n] : kHazardNames)
        if (n == name) return k;
    return std::nullopt;
}

Email compose_email(const AlarmEvent& ev, std::vector<std::string> recipients) {
    if (ev.location.empty()) throw EmptyLocation();
    Email email;
    email.to = std::move(recipients);
    email.subject = std::string(kAlertSubject);
    email.body = std::string(to_string(ev.kind)) + " Detected in the " + ev.location;
    return email;
}

Command maybe_auto_off(const SirenLatch& latch, TimePoint now) {
    if (latch.on && now - latch.since >= latch.auto_off_after) return Command::TurnOff;
    return Command::Hold;
}

AlarmEngine::AlarmEngine(AlarmSettings settings) : settings_(std::move(settings)) {
    if (settings_.auto_off_after.count() < 0) throw std::invalid_argument("siren auto-off must be >= 0");
    if (settings_.debounce.count() < 0) throw std::invalid_argument("alarm debounce must be >= 0");
    latch_.auto_off_after = settings_.auto_off_after;
}

void AlarmEngine::set_siren(Registry& reg, bool on) const {
    const auto* siren = reg.first_of_kind(DeviceKind::Siren);
    if (!siren) {
        spdlog::warn("alarm: roster has no siren device");
        return;
    }
    reg.set_switch(siren->id, on);
}

std::optional<Email> AlarmEngine::on_event(const AlarmEvent& ev, Registry& reg) {
    auto email = compose_email(ev, settings_.recipients);

    history_.push_back(ev);
    if (!latch_.on) {
        latch_.on = true;
        latch_.since = ev.at;
    }
    set_siren(reg, true);
    spdlog::info("alarm: {} in {}, siren on", to_string(ev.kind), ev.location);

    auto key = std::make_pair(ev.kind, ev.location);
    auto it = last_emailed_.find(key);
    if (it != last_emailed_.end() && ev.at - it->second < settings_.debounce) return std::nullopt;
    last_emailed_[key] = ev.at;
    return email;
}

bool AlarmEngine::tick(Registry& reg, TimePoint now) {
    if (maybe_auto_off(latch_, now) != Command::TurnOff) return false;
    release();
    set_siren(reg, false);
    spdlog::info("alarm: siren auto-off after {}s", settings_.auto_off_after.count());
    return true;
}

void AlarmEngine::manual_release(Registry& reg) {
    release();
    set_siren(reg, false);
}

void AlarmEngine::rearm(TimePoint now) {
    latch_.on = true;
    latch_.since = now;
}

void AlarmEngine::release() {
    latch_.on = false;
    last_emailed_.clear();
}

}  // namespace smarthub
