#include "smarthub/smtp_transport.hpp"

#include <curl/curl.h>

#include <cstring>
#include <ctime>
#include <memory>
#include <mutex>

namespace smarthub {

namespace {

void global_init_once() {
    static std::once_flag once;
    std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

struct Payload {
    const std::string* text;
    std::size_t offset = 0;
};

std::size_t read_payload(char* buffer, std::size_t size, std::size_t nitems, void* userdata) {
    auto* p = static_cast<Payload*>(userdata);
    std::size_t room = size * nitems;
    std::size_t left = p->text->size() - p->offset;
    std::size_t n = left < room ? left : room;
    std::memcpy(buffer, p->text->data() + p->offset, n);
    p->offset += n;
    return n;
}

std::string rfc5322_date() {
    std::time_t t = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&t, &utc);
    char buf[64];
    std::strftime(buf, sizeof buf, "%a, %d %b %Y %H:%M:%S +0000", &utc);
    return buf;
}

// Bare CR or LF in a header would let a body smuggle extra headers.
std::string header_safe(std::string s) {
    for (auto& c : s)
        if (c == '\r' || c == '\n') c = ' ';
    return s;
}

}  // namespace

SmtpTransport::SmtpTransport(SmtpSettings settings) : settings_(std::move(settings)) { global_init_once(); }

std::string SmtpTransport::format_message(const Email& email) const {
    std::string to;
    for (const auto& addr : email.to) {
        if (!to.empty()) to += ", ";
        to += "<" + header_safe(addr) + ">";
    }
    std::string msg;
    msg += "Date: " + rfc5322_date() + "\r\n";
    msg += "To: " + to + "\r\n";
    msg += "From: <" + header_safe(settings_.sender) + ">\r\n";
    msg += "Subject: " + header_safe(email.subject) + "\r\n";
    msg += "Content-Type: text/plain; charset=utf-8\r\n";
    msg += "\r\n";
    // Normalise line endings to CRLF.
    for (std::size_t i = 0; i < email.body.size(); ++i) {
        char c = email.body[i];
        if (c == '\n' && (i == 0 || email.body[i - 1] != '\r')) msg += '\r';
        msg += c;
    }
    msg += "\r\n";
    return msg;
}

void SmtpTransport::send(const Email& email) {
    if (email.to.empty()) throw MailTransportFailure("email has no recipients");

    std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), &curl_easy_cleanup);
    if (!curl) throw MailTransportFailure("curl_easy_init failed");

    std::unique_ptr<curl_slist, decltype(&curl_slist_free_all)> rcpt(nullptr, &curl_slist_free_all);
    for (const auto& addr : email.to) {
        auto* next = curl_slist_append(rcpt.get(), ("<" + addr + ">").c_str());
        if (!next) throw MailTransportFailure("out of memory building recipient list");
        rcpt.release();
        rcpt.reset(next);
    }

    std::string url = "smtp://" + settings_.host + ":" + std::to_string(settings_.port);
    std::string from = "<" + settings_.sender + ">";
    std::string text = format_message(email);
    Payload payload{&text};

    CURL* h = curl.get();
    curl_easy_setopt(h, CURLOPT_URL, url.c_str());
    curl_easy_setopt(h, CURLOPT_MAIL_FROM, from.c_str());
    curl_easy_setopt(h, CURLOPT_MAIL_RCPT, rcpt.get());
    curl_easy_setopt(h, CURLOPT_READFUNCTION, read_payload);
    curl_easy_setopt(h, CURLOPT_READDATA, &payload);
    curl_easy_setopt(h, CURLOPT_UPLOAD, 1L);
    curl_easy_setopt(h, CURLOPT_TIMEOUT, static_cast<long>(settings_.timeout.count()));
    curl_easy_setopt(h, CURLOPT_NOSIGNAL, 1L);
    if (!settings_.username.empty()) {
        curl_easy_setopt(h, CURLOPT_USERNAME, settings_.username.c_str());
        curl_easy_setopt(h, CURLOPT_PASSWORD, settings_.password.c_str());
    }
    if (settings_.starttls) curl_easy_setopt(h, CURLOPT_USE_SSL, static_cast<long>(CURLUSESSL_ALL));

    CURLcode rc = curl_easy_perform(h);
    if (rc != CURLE_OK) throw MailTransportFailure(std::string("smtp: ") + curl_easy_strerror(rc));
}

}  // namespace smarthub
