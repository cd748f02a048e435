#pragma once

// Random generators over the packet grammar, shared by the unit and
// acceptance suites. They build fields character by character from the
// allowed alphabet and never call into the codec.

#include "smarthub/packet.hpp"

#include <random>
#include <set>
#include <string>

namespace smarthub::test {

inline char random_printable(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0x21, 0x7e);
    return static_cast<char>(d(rng));
}

inline std::string random_token(std::mt19937& rng, const std::string& forbidden, int max_len = 12) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::string s;
    for (int n = len(rng); n > 0;) {
        char c = random_printable(rng);
        if (forbidden.find(c) != std::string::npos) continue;
        s += c;
        --n;
    }
    return s;
}

inline CommandPacket random_command(std::mt19937& rng) {
    // Bias targets towards containing underscores to stress the split.
    std::bernoulli_distribution underscored(0.5);
    CommandPacket p;
    p.auth = random_token(rng, "$");
    p.target = random_token(rng, "$");
    if (underscored(rng)) p.target += "_" + random_token(rng, "$", 4);
    p.action = random_token(rng, "$_");
    return p;
}

inline ResponsePacket random_response(std::mt19937& rng) {
    static const ResponseCode codes[] = {ResponseCode::Ok, ResponseCode::PasswordChanged, ResponseCode::Rejected};
    std::uniform_int_distribution<int> code(0, 2);
    std::uniform_int_distribution<int> count(0, 12);
    std::uniform_int_distribution<std::int64_t> status(0, 1000);
    ResponsePacket p;
    p.code = codes[code(rng)];
    std::set<std::string> seen;
    for (int n = count(rng); n > 0; --n) {
        auto id = random_token(rng, ":");
        if (!seen.insert(id).second) continue;
        p.statuses.push_back({id, status(rng)});
    }
    return p;
}

}  // namespace smarthub::test
