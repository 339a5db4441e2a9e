#pragma once

#include "ztap/mac154.hpp"

namespace ztap {

enum class NwkFrameType : uint8_t { Data = 0, Command = 1 };

struct NwkFrame {
    NwkFrameType frame_type = NwkFrameType::Data;
    uint8_t protocol_version = 2;
    uint16_t dst_short = 0;
    uint16_t src_short = 0;
    uint8_t radius = 0;
    uint8_t nwk_seq = 0;
    std::optional<uint64_t> dst_ext;
    std::optional<uint64_t> src_ext;
    bool security = false;
    Bytes payload;  // opaque (typically encrypted) bytes after the NWK header
};

// Decodes the Zigbee NWK header at the start of a MAC Data frame's payload.
// Returns nullopt for non-Data frames and for payloads that do not look like
// a Zigbee NWK header; throws DataError when a valid header declares fields
// the payload is too short to hold.
//
// Frame control layout (little-endian 16 bits): bits 0-1 frame type,
// 2-5 protocol version, 6-7 discover route, 8 multicast, 9 security,
// 10 source route, 11 destination IEEE address, 12 source IEEE address.
std::optional<NwkFrame> parse_nwk(const Mac154Frame& frame);

}  // namespace ztap
