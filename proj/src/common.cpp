#include "ztap/common.hpp"

#include <cctype>
#include <cstdio>

namespace ztap {

std::string to_hex16(uint16_t v) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "0x%04x", v);
    return buf;
}

std::string to_hex64(uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

uint64_t parse_hex(std::string_view s) {
    std::string_view body = s;
    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X'))
        body = body.substr(2);
    if (body.empty() || body.size() > 16)
        throw DataError("bad-hex", "malformed hex value: '" + std::string(s) + "'");
    uint64_t v = 0;
    for (char c : body) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<uint64_t>(c - 'A' + 10);
        else throw DataError("bad-hex", "malformed hex value: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace ztap
