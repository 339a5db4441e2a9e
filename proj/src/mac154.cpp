#include "ztap/mac154.hpp"

#include "ztap/crc16.hpp"

namespace ztap {

const char* to_string(MacFrameType t) {
    switch (t) {
        case MacFrameType::Beacon: return "Beacon";
        case MacFrameType::Data: return "Data";
        case MacFrameType::Ack: return "Ack";
        case MacFrameType::MacCommand: return "MacCommand";
        default: return "Reserved";
    }
}

Mac154Frame parse_mac154(double timestamp, ByteSpan bytes, FcsMode fcs) {
    const size_t total = bytes.size();
    if (total < 3)
        throw DataError("truncated-mac", "MAC frame shorter than frame control + sequence (" +
                                             std::to_string(total) + " bytes)");

    Mac154Frame f;
    f.timestamp = timestamp;
    f.captured_len = static_cast<uint32_t>(total);
    f.fcs_present = (fcs == FcsMode::Present);
    if (f.fcs_present) {
        f.fcs_ok = fcs_check(bytes);
        bytes = bytes.first(total - 2);  // header/payload view excludes the FCS
    }

    const uint16_t fc = rd16le(bytes.data());
    const uint8_t type_bits = fc & 0x7;
    f.frame_type = type_bits <= 3 ? static_cast<MacFrameType>(type_bits) : MacFrameType::Reserved;
    f.security_enabled = (fc >> 3) & 1;
    f.frame_pending = (fc >> 4) & 1;
    f.ack_request = (fc >> 5) & 1;
    f.panid_compression = (fc >> 6) & 1;
    const uint8_t dst_mode = (fc >> 10) & 0x3;
    f.frame_version = (fc >> 12) & 0x3;
    const uint8_t src_mode = (fc >> 14) & 0x3;

    if (dst_mode == 1 || src_mode == 1)
        throw DataError("reserved-addressing", "reserved addressing mode 1 in frame control " +
                                                   to_hex16(fc));

    f.seq = bytes[2];
    size_t pos = 3;

    auto need = [&](size_t n, const char* what) {
        if (pos + n > bytes.size())
            throw DataError("truncated-mac", std::string("MAC frame truncated in ") + what);
    };

    if (dst_mode != 0) {
        need(2, "destination PAN");
        f.dst_pan = rd16le(bytes.data() + pos);
        pos += 2;
        if (dst_mode == 2) {
            need(2, "destination address");
            f.dst_addr = Addr::make_short(rd16le(bytes.data() + pos));
            pos += 2;
        } else {
            need(8, "destination address");
            f.dst_addr = Addr::make_extended(rd64le(bytes.data() + pos));
            pos += 8;
        }
    }

    if (src_mode != 0) {
        if (f.panid_compression && dst_mode != 0) {
            f.src_pan = f.dst_pan;  // compressed: source PAN inherits destination PAN
        } else if (!f.panid_compression) {
            need(2, "source PAN");
            f.src_pan = rd16le(bytes.data() + pos);
            pos += 2;
        }
        if (src_mode == 2) {
            need(2, "source address");
            f.src_addr = Addr::make_short(rd16le(bytes.data() + pos));
            pos += 2;
        } else {
            need(8, "source address");
            f.src_addr = Addr::make_extended(rd64le(bytes.data() + pos));
            pos += 8;
        }
    }

    f.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
    return f;
}

}  // namespace ztap
