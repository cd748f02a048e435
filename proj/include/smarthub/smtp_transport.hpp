#pragma once

#include "smarthub/mail.hpp"

#include <chrono>
#include <string>

namespace smarthub {

struct SmtpSettings {
    std::string host = "localhost";
    int port = 25;
    std::string sender = "hub@localhost";
    std::string username;  // empty: no AUTH
    std::string password;
    bool starttls = false;
    std::chrono::seconds timeout{10};
};

/// Plain SMTP (optionally STARTTLS) through libcurl.
class SmtpTransport final : public MailTransport {
public:
    explicit SmtpTransport(SmtpSettings settings);
    void send(const Email& email) override;

    /// RFC 5322 message text as sent after DATA. Exposed for tests.
    std::string format_message(const Email& email) const;

private:
    SmtpSettings settings_;
};

}  // namespace smarthub
