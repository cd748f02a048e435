#include "smarthub/hub.hpp"

#include <spdlog/spdlog.h>

namespace smarthub {

HubOptions HubOptions::from_config(const HubConfig& cfg) {
    HubOptions o;
    o.state_path = cfg.state_path;
    o.roster = cfg.roster;
    o.alarm = cfg.alarm;
    o.automation = cfg.automation;
    o.mail_retry = cfg.mail.retry;
    return o;
}

Hub::Hub(HubOptions options, std::shared_ptr<const Clock> clock, std::shared_ptr<MailTransport> mail)
    : options_(std::move(options)),
      clock_(std::move(clock)),
      mail_(std::move(mail), options_.mail_retry),
      alarm_(options_.alarm),
      automation_(options_.automation) {
    if (!clock_) throw std::invalid_argument("Hub needs a clock");

    auto booted = boot(options_.state_path, options_.roster);
    state_ = std::move(booted.state);
    booted_fresh_ = booted.fresh;

    if (const auto* siren = state_.registry.first_of_kind(DeviceKind::Siren); siren && siren->status == 1) {
        alarm_.rearm(clock_->now());
        spdlog::info("hub: siren was on at shutdown, latch re-armed");
    }
    if (booted_fresh_) {
        spdlog::info("hub: no state at {}, starting with defaults", options_.state_path.string());
        persist_copy(state_, 0);
    }
}

Hub::~Hub() = default;

ResponsePacket Hub::handle_command(std::string_view raw) {
    ResponsePacket response;  // 404 until a successful path says otherwise

    CommandPacket pkt;
    try {
        pkt = parse_command(raw);
    } catch (const MalformedPacket& e) {
        spdlog::debug("hub: malformed packet: {}", e.what());
        return response;
    }

    std::optional<HubState> to_persist;
    std::uint64_t seq = 0;
    {
        std::lock_guard lock(gate_);
        if (pkt.auth != state_.password) return response;

        if (pkt.target == kChangePassTarget) {
            if (!is_valid_password(pkt.action)) return response;
            state_.password = pkt.action;
            response.code = ResponseCode::PasswordChanged;
            spdlog::info("hub: password changed");
        } else {
            const auto before = state_.registry;
            try {
                apply_action_in_place(state_.registry, pkt.target, pkt.action);
            } catch (const DeviceError& e) {
                spdlog::debug("hub: rejected {}_{}: {}", pkt.target, pkt.action, e.what());
                return response;
            }
            const auto* dev = state_.registry.find(pkt.target);
            if (dev && dev->kind == DeviceKind::Siren && pkt.action == "Off") alarm_.manual_release(state_.registry);
            response.code = ResponseCode::Ok;
            response.statuses = wire_snapshot(state_.registry);
            if (state_.registry == before) return response;
        }
        seq = ++mutation_seq_;
        to_persist = state_;
    }
    persist_copy(std::move(*to_persist), seq);
    return response;
}

ResponsePacket Hub::status() const {
    std::lock_guard lock(gate_);
    return {ResponseCode::Ok, wire_snapshot(state_.registry)};
}

bool Hub::check_password(std::string_view attempt) const {
    std::lock_guard lock(gate_);
    return attempt == state_.password;
}

void Hub::set_sensor(std::string_view sensor_id, std::int64_t value) {
    HubState copy;
    std::uint64_t seq = 0;
    {
        std::lock_guard lock(gate_);
        auto before = state_.registry;
        state_.registry.set_sensor(sensor_id, value);
        if (state_.registry == before) return;
        seq = ++mutation_seq_;
        copy = state_;
    }
    persist_copy(std::move(copy), seq);
}

void Hub::raise_alarm(HazardKind kind, std::string location) {
    std::optional<Email> email;
    HubState copy;
    std::uint64_t seq = 0;
    {
        std::lock_guard lock(gate_);
        AlarmEvent ev{kind, std::move(location), clock_->now()};
        email = alarm_.on_event(ev, state_.registry);
        seq = ++mutation_seq_;
        copy = state_;
    }
    if (email) mail_.submit(std::move(*email));
    persist_copy(std::move(copy), seq);
}

TickReport Hub::tick() {
    TickReport report;
    HubState copy;
    std::uint64_t seq = 0;
    {
        std::lock_guard lock(gate_);
        const auto now = clock_->now();
        report.siren_auto_off = alarm_.tick(state_.registry, now);
        report.actions = automation_.tick(state_.registry, *clock_);
        for (const auto& a : report.actions) {
            apply_action_in_place(state_.registry, a.actuator_id, a.turn_on ? "On" : "Off");
            spdlog::info("automation: {} {}", a.actuator_id, a.turn_on ? "On" : "Off");
        }
        if (!report.siren_auto_off && report.actions.empty()) return report;
        seq = ++mutation_seq_;
        copy = state_;
    }
    persist_copy(std::move(copy), seq);
    return report;
}

Registry Hub::registry() const {
    std::lock_guard lock(gate_);
    return state_.registry;
}

HubState Hub::state() const {
    std::lock_guard lock(gate_);
    return state_;
}

SirenLatch Hub::siren_latch() const {
    std::lock_guard lock(gate_);
    return alarm_.latch();
}

std::vector<AlarmEvent> Hub::alarm_history() const {
    std::lock_guard lock(gate_);
    return alarm_.history();
}

void Hub::flush_mail() { mail_.flush(); }

std::optional<std::string> Hub::last_persist_error() const {
    std::lock_guard lock(persist_mutex_);
    return persist_error_;
}

void Hub::persist_copy(HubState copy, std::uint64_t seq) {
    std::lock_guard lock(persist_mutex_);
    // A slower writer holding an older copy must not overwrite a newer file.
    if (seq != 0 && seq <= persisted_seq_) return;
    try {
        persist(copy, options_.state_path);
        persisted_seq_ = seq;
        persist_error_.reset();
    } catch (const IoFailure& e) {
        spdlog::error("hub: persisting state failed, keeping in-memory state: {}", e.what());
        persist_error_ = e.what();
    }
}

Ticker::Ticker(Seconds period, std::function<void()> fn) {
    auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(period);
    thread_ = std::thread([this, wait, fn = std::move(fn)] {
        std::unique_lock lock(mutex_);
        while (!stop_cv_.wait_for(lock, wait, [this] { return stopping_; })) {
            lock.unlock();
            try {
                fn();
            } catch (const std::exception& e) {
                spdlog::error("ticker: {}", e.what());
            }
            lock.lock();
        }
    });
}

Ticker::~Ticker() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    stop_cv_.notify_all();
    thread_.join();
}

}  // namespace smarthub
