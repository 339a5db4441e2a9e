#pragma once

#include <filesystem>

#include "ztap/nwk.hpp"
#include "ztap/pcap.hpp"

namespace ztap {

struct DecodedFrame {
    Mac154Frame mac;
    std::optional<NwkFrame> nwk;
};

struct CaptureStats {
    uint64_t frames_total = 0;
    uint64_t fcs_failed = 0;        // frames whose FCS did not verify
    uint64_t malformed_mac = 0;     // MAC-level parse errors (skipped)
    uint64_t truncated_nwk = 0;     // NWK headers that declared more than present
    uint64_t nwk_frames = 0;        // decodable NWK headers on FCS-passing frames
    uint64_t nwk_frames_fcs_failed = 0;  // decodable NWK headers on FCS-failing frames
    uint64_t excluded_fcs_failed = 0;    // dropped because of FCS, when excluding
};

struct DecodeOptions {
    bool include_fcs_failed = false;  // corrupted frames are parsed but dropped by default
};

// Decodes every frame of a capture: MAC header, then the Zigbee NWK header
// where one is present. Malformed frames are counted and skipped.
std::vector<DecodedFrame> decode_frames(const std::vector<RawFrame>& frames, bool fcs_present,
                                        DecodeOptions opts = {}, CaptureStats* stats = nullptr);

struct DecodedCapture {
    std::vector<DecodedFrame> frames;
    CaptureMeta meta;
    CaptureStats stats;
};

DecodedCapture decode_pcap(const std::filesystem::path& path, DecodeOptions opts = {});

}  // namespace ztap
