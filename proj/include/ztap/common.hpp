#pragma once

#include <charconv>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ztap {

inline constexpr const char* kVersion = "0.1.0";

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

// Base for all toolkit errors. UsageError maps to exit code 2 at the CLI,
// DataError to exit code 3.
class Error : public std::runtime_error {
public:
    Error(std::string type, const std::string& msg)
        : std::runtime_error(msg), type_(std::move(type)) {}
    const std::string& type() const { return type_; }

private:
    std::string type_;
};

class UsageError : public Error {
public:
    UsageError(std::string type, const std::string& msg) : Error(std::move(type), msg) {}
    explicit UsageError(const std::string& msg) : Error("usage", msg) {}
};

class DataError : public Error {
public:
    DataError(std::string type, const std::string& msg) : Error(std::move(type), msg) {}
    explicit DataError(const std::string& msg) : Error("data", msg) {}
};

inline uint16_t rd16le(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

inline uint32_t rd32le(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

inline uint64_t rd64le(const uint8_t* p) {
    return static_cast<uint64_t>(rd32le(p)) | (static_cast<uint64_t>(rd32le(p + 4)) << 32);
}

inline void wr16le(Bytes& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

inline void wr32le(Bytes& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}

inline void wr64le(Bytes& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}

// Shortest decimal form that round-trips the exact double value. Used for
// every CSV/JSON number we emit so repeated runs are byte-identical.
inline std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw DataError("bad-number", "cannot parse number: '" + std::string(s) + "'");
    return v;
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex16(uint16_t v);
std::string to_hex64(uint64_t v);
uint64_t parse_hex(std::string_view s);  // accepts 0x-prefixed or bare hex

}  // namespace ztap
