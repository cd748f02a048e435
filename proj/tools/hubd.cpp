// hubd: the hub server.
//
//   hubd --config hub.json [--state hub_state.txt] [--port 8080]

#include "smarthub/config.hpp"
#include "smarthub/http_server.hpp"
#include "smarthub/hub.hpp"
#include "smarthub/smtp_transport.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <csignal>
#include <iostream>
#include <thread>

namespace {

// Capture mode in production: keep the email in memory and log it.
class LoggingCaptureTransport final : public smarthub::MailTransport {
public:
    void send(const smarthub::Email& email) override {
        capture_.send(email);
        spdlog::info("mail (capture): subject='{}' body='{}' recipients={}", email.subject, email.body, email.to.size());
    }

private:
    smarthub::CaptureTransport capture_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smart home hub server"};
    std::string config_path;
    std::string state_path;
    int port = -1;
    bool verbose = false;
    app.add_option("--config", config_path, "Hub configuration file (JSON)");
    app.add_option("--state", state_path, "State file, overrides the config's state_path");
    app.add_option("--port", port, "Listen port, overrides the config (0 = any free port)");
    app.add_flag("-v,--verbose", verbose, "Debug logging");
    CLI11_PARSE(app, argc, argv);

    if (verbose) spdlog::set_level(spdlog::level::debug);

    smarthub::HubConfig cfg;
    try {
        if (!config_path.empty()) cfg = smarthub::load_config(config_path);
    } catch (const smarthub::ConfigError& e) {
        std::cerr << "hubd: " << e.what() << "\n";
        return 1;
    }
    if (!state_path.empty()) cfg.state_path = state_path;
    if (port >= 0) cfg.port = port;

    std::shared_ptr<smarthub::MailTransport> mail;
    if (cfg.mail.mode == smarthub::MailMode::Smtp) mail = std::make_shared<smarthub::SmtpTransport>(cfg.mail.smtp);
    else mail = std::make_shared<LoggingCaptureTransport>();

    // Handle SIGINT/SIGTERM synchronously on the main thread.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    std::unique_ptr<smarthub::Hub> hub;
    try {
        hub = std::make_unique<smarthub::Hub>(smarthub::HubOptions::from_config(cfg),
                                              std::make_shared<smarthub::WallClock>(), mail);
    } catch (const smarthub::CorruptStateFile& e) {
        std::cerr << "hubd: refusing to start: " << e.what() << "\n";
        return 3;
    }

    smarthub::HttpServer server(*hub, cfg.panel_dir);
    int bound = server.bind(cfg.host, cfg.port);
    if (bound < 0) {
        std::cerr << "hubd: cannot listen on " << cfg.host << ":" << cfg.port << "\n";
        return 1;
    }
    std::cout << "listening on " << cfg.host << ":" << bound << std::endl;

    smarthub::Ticker ticker(cfg.tick_period, [&] { hub->tick(); });
    std::thread http([&] { server.serve(); });

    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("hubd: signal {}, shutting down", sig);
    server.stop();
    http.join();
    hub->flush_mail();
    return 0;
}
