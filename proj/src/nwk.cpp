#include "ztap/nwk.hpp"

namespace ztap {

std::optional<NwkFrame> parse_nwk(const Mac154Frame& frame) {
    if (frame.frame_type != MacFrameType::Data) return std::nullopt;
    const Bytes& p = frame.payload;
    if (p.size() < 2) return std::nullopt;

    const uint16_t fc = rd16le(p.data());
    const uint8_t type_bits = fc & 0x3;
    const uint8_t version = (fc >> 2) & 0xF;
    const bool multicast = (fc >> 8) & 1;
    const bool security = (fc >> 9) & 1;
    const bool source_route = (fc >> 10) & 1;
    const bool has_dst_ext = (fc >> 11) & 1;
    const bool has_src_ext = (fc >> 12) & 1;

    // Versions 1/2 share this layout; anything else (green power, reserved)
    // is treated as a non-Zigbee payload.
    if (type_bits > 1 || version < 1 || version > 2) return std::nullopt;

    auto truncated = [&]() -> DataError {
        return DataError("truncated-nwk", "truncated NWK header (" + std::to_string(p.size()) +
                                              " payload bytes)");
    };

    if (p.size() < 8) throw truncated();

    NwkFrame n;
    n.frame_type = static_cast<NwkFrameType>(type_bits);
    n.protocol_version = version;
    n.security = security;
    n.dst_short = rd16le(p.data() + 2);
    n.src_short = rd16le(p.data() + 4);
    n.radius = p[6];
    n.nwk_seq = p[7];
    size_t pos = 8;

    auto need = [&](size_t k) {
        if (pos + k > p.size()) throw truncated();
    };

    if (has_dst_ext) {
        need(8);
        n.dst_ext = rd64le(p.data() + pos);
        pos += 8;
    }
    if (has_src_ext) {
        need(8);
        n.src_ext = rd64le(p.data() + pos);
        pos += 8;
    }
    if (multicast) {
        need(1);
        pos += 1;
    }
    if (source_route) {
        // relay count, relay index, then the 16-bit relay list
        need(2);
        const uint8_t relay_count = p[pos];
        pos += 2;
        need(static_cast<size_t>(relay_count) * 2);
        pos += static_cast<size_t>(relay_count) * 2;
    }

    n.payload.assign(p.begin() + static_cast<std::ptrdiff_t>(pos), p.end());
    return n;
}

}  // namespace ztap
