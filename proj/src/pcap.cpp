#include "ztap/pcap.hpp"

#include <cstring>

namespace ztap {

namespace {

constexpr uint32_t kMagicUsec = 0xA1B2C3D4;
constexpr uint32_t kMagicUsecSwapped = 0xD4C3B2A1;
constexpr uint32_t kMagicNsec = 0xA1B23C4D;
constexpr uint32_t kMagicNsecSwapped = 0x4D3CB2A1;

uint32_t bswap32(uint32_t v) {
    return ((v & 0x000000FFu) << 24) | ((v & 0x0000FF00u) << 8) |
           ((v & 0x00FF0000u) >> 8) | ((v & 0xFF000000u) >> 24);
}

}  // namespace

uint32_t PcapReader::fix32(uint32_t v) const { return swapped_ ? bswap32(v) : v; }

PcapReader::PcapReader(const std::filesystem::path& path) : path_(path) {
    in_.open(path, std::ios::binary);
    if (!in_)
        throw DataError("unreadable-file", "cannot open pcap file: " + path.string());

    uint8_t hdr[24];
    in_.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    if (in_.gcount() != sizeof(hdr))
        throw DataError("bad-pcap", "pcap file too short for global header: " + path.string());

    const uint32_t magic = rd32le(hdr);
    switch (magic) {
        case kMagicUsec: break;
        case kMagicUsecSwapped: swapped_ = true; break;
        case kMagicNsec: nanosecond_ = true; break;
        case kMagicNsecSwapped: swapped_ = true; nanosecond_ = true; break;
        default:
            throw DataError("unknown-magic",
                            "not a classic pcap file (magic " + to_hex64(magic).substr(0, 10) +
                                "): " + path.string());
    }

    meta_.link_type = fix32(rd32le(hdr + 20));
    if (meta_.link_type != kLink802154WithFcs && meta_.link_type != kLink802154NoFcs)
        throw DataError("unsupported-link-type",
                        "pcap link type " + std::to_string(meta_.link_type) +
                            " is not an IEEE 802.15.4 variant (expected 195 or 230)");
}

std::optional<RawFrame> PcapReader::next() {
    uint8_t rec[16];
    in_.read(reinterpret_cast<char*>(rec), sizeof(rec));
    if (in_.gcount() == 0)
        return std::nullopt;
    if (in_.gcount() != sizeof(rec))
        throw DataError("truncated-record", "truncated pcap record header at record " +
                                                std::to_string(record_index_));

    const uint32_t ts_sec = fix32(rd32le(rec));
    const uint32_t ts_frac = fix32(rd32le(rec + 4));
    const uint32_t cap_len = fix32(rd32le(rec + 8));
    const uint32_t orig_len = fix32(rd32le(rec + 12));

    RawFrame frame;
    frame.timestamp = static_cast<double>(ts_sec) +
                      static_cast<double>(ts_frac) * (nanosecond_ ? 1e-9 : 1e-6);
    frame.orig_len = orig_len;
    frame.data.resize(cap_len);
    if (cap_len > 0) {
        in_.read(reinterpret_cast<char*>(frame.data.data()), cap_len);
        if (static_cast<uint32_t>(in_.gcount()) != cap_len)
            throw DataError("truncated-record",
                            "pcap record " + std::to_string(record_index_) + " declares " +
                                std::to_string(cap_len) + " captured bytes but the file ends early");
    }

    if (meta_.frame_count == 0) {
        meta_.t_start = frame.timestamp;
    } else if (frame.timestamp < last_ts_ && !warned_order_) {
        meta_.warnings.push_back("non-monotonic timestamp at record " +
                                 std::to_string(record_index_));
        warned_order_ = true;
    }
    last_ts_ = frame.timestamp;
    if (frame.timestamp > meta_.t_end) meta_.t_end = frame.timestamp;
    ++meta_.frame_count;
    meta_.byte_count += cap_len;
    ++record_index_;
    return frame;
}

Capture read_pcap(const std::filesystem::path& path) {
    PcapReader reader(path);
    Capture cap;
    while (auto f = reader.next()) cap.frames.push_back(std::move(*f));
    cap.meta = reader.meta();
    return cap;
}

void PcapWriter::write_header() {
    wr32le(buf_, kMagicUsec);
    wr16le(buf_, 2);   // version major
    wr16le(buf_, 4);   // version minor
    wr32le(buf_, 0);   // thiszone
    wr32le(buf_, 0);   // sigfigs
    wr32le(buf_, 256); // snaplen
    wr32le(buf_, link_type_);
}

void PcapWriter::write(uint64_t t_us, ByteSpan frame) {
    wr32le(buf_, static_cast<uint32_t>(t_us / 1000000ull));
    wr32le(buf_, static_cast<uint32_t>(t_us % 1000000ull));
    wr32le(buf_, static_cast<uint32_t>(frame.size()));
    wr32le(buf_, static_cast<uint32_t>(frame.size()));
    buf_.insert(buf_.end(), frame.begin(), frame.end());
}

void PcapWriter::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw DataError("unwritable-file", "cannot write pcap file: " + path.string());
    out.write(reinterpret_cast<const char*>(buf_.data()),
              static_cast<std::streamsize>(buf_.size()));
}

}  // namespace ztap
