#include "ztap/capture.hpp"

namespace ztap {

std::vector<DecodedFrame> decode_frames(const std::vector<RawFrame>& frames, bool fcs_present,
                                        DecodeOptions opts, CaptureStats* stats) {
    CaptureStats local;
    CaptureStats& s = stats ? *stats : local;
    std::vector<DecodedFrame> out;
    out.reserve(frames.size());

    for (const RawFrame& raw : frames) {
        ++s.frames_total;
        DecodedFrame d;
        try {
            d.mac = parse_mac154(raw.timestamp, raw.data,
                                 fcs_present ? FcsMode::Present : FcsMode::None);
        } catch (const DataError&) {
            ++s.malformed_mac;
            continue;
        }
        if (!d.mac.fcs_ok) ++s.fcs_failed;

        try {
            d.nwk = parse_nwk(d.mac);
        } catch (const DataError&) {
            ++s.truncated_nwk;
            d.nwk = std::nullopt;
        }
        if (d.nwk) {
            if (d.mac.fcs_ok) ++s.nwk_frames;
            else ++s.nwk_frames_fcs_failed;
        }

        if (!d.mac.fcs_ok && !opts.include_fcs_failed) {
            ++s.excluded_fcs_failed;
            continue;
        }
        out.push_back(std::move(d));
    }
    return out;
}

DecodedCapture decode_pcap(const std::filesystem::path& path, DecodeOptions opts) {
    PcapReader reader(path);
    std::vector<RawFrame> raw;
    while (auto f = reader.next()) raw.push_back(std::move(*f));

    DecodedCapture cap;
    cap.meta = reader.meta();
    cap.frames = decode_frames(raw, reader.fcs_present(), opts, &cap.stats);
    return cap;
}

}  // namespace ztap
