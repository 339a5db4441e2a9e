#pragma once

#include <optional>

#include "ztap/common.hpp"

namespace ztap {

enum class MacFrameType : uint8_t { Beacon = 0, Data = 1, Ack = 2, MacCommand = 3, Reserved = 4 };

const char* to_string(MacFrameType t);

// 16-bit short or 64-bit extended IEEE address.
class Addr {
public:
    static Addr make_short(uint16_t v) { return Addr(false, v); }
    static Addr make_extended(uint64_t v) { return Addr(true, v); }

    bool is_short() const { return !extended_; }
    bool is_extended() const { return extended_; }
    uint16_t short_value() const { return static_cast<uint16_t>(value_); }
    uint64_t value() const { return value_; }

    bool operator==(const Addr&) const = default;

private:
    Addr(bool extended, uint64_t value) : extended_(extended), value_(value) {}
    bool extended_;
    uint64_t value_;
};

struct Mac154Frame {
    double timestamp = 0.0;
    MacFrameType frame_type = MacFrameType::Reserved;
    bool security_enabled = false;
    bool frame_pending = false;
    bool ack_request = false;
    bool panid_compression = false;
    uint8_t frame_version = 0;  // values other than 0/1 parsed with the same layout
    uint8_t seq = 0;
    std::optional<uint16_t> dst_pan;
    std::optional<uint16_t> src_pan;
    std::optional<Addr> dst_addr;
    std::optional<Addr> src_addr;
    Bytes payload;  // MAC payload (FCS stripped when present)
    uint32_t captured_len = 0;
    bool fcs_present = false;
    bool fcs_ok = true;  // vacuously true when no FCS captured
};

enum class FcsMode { None, Present };

// Decodes one IEEE 802.15.4 MAC frame. `bytes` is the captured MPDU; with
// FcsMode::Present the trailing two bytes are the FCS and are verified.
// Throws DataError on truncation or a reserved addressing mode.
Mac154Frame parse_mac154(double timestamp, ByteSpan bytes, FcsMode fcs = FcsMode::None);

}  // namespace ztap
