#pragma once

#include <filesystem>

#include "ztap/capture.hpp"
#include "ztap/device_map.hpp"

namespace ztap {

enum class Direction : uint8_t { Uplink = 0, Downlink = 1 };

const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);

// NWK destinations at or above this value are broadcast.
inline constexpr uint16_t kNwkBroadcastMin = 0xFFF8;

// Sentinel stored in mac_src when the transmitter used an extended address
// that could not be mapped to a short address.
inline constexpr uint16_t kNoShortAddr = 0xFFFE;

struct PacketRecord {
    double timestamp = 0.0;
    std::string device_label;
    DeviceCategory category = DeviceCategory::Temperature;
    Direction direction = Direction::Uplink;
    uint32_t length = 0;  // captured MAC frame length, FCS included when present
    uint16_t nwk_src = 0;
    uint16_t nwk_dst = 0;
    uint16_t mac_src = 0;
    bool first_hop = false;
    std::string topology;
};

struct BuildOptions {
    std::string topology;
    bool include_mac_commands = false;  // opt-in: label MAC command frames from MAC addresses
};

struct BuildSummary {
    uint64_t input_frames = 0;
    uint64_t emitted = 0;
    uint64_t skipped_no_nwk = 0;        // Acks, beacons, MAC commands, non-Zigbee payloads
    uint64_t skipped_non_panc = 0;      // device-to-device NWK traffic
    uint64_t skipped_unknown_addr = 0;  // endpoints missing from the device map
    uint64_t relayed = 0;               // emitted records with first_hop = false
};

// Turns decoded frames of one topology into labeled, direction-assigned
// packet observations. One record per NWK-bearing frame whose endpoints are
// {device, PANC}; everything else is counted and skipped.
std::vector<PacketRecord> build_records(const std::vector<DecodedFrame>& frames,
                                        const DeviceMap& map, const BuildOptions& opts,
                                        BuildSummary* summary = nullptr);

// Keeps exactly the records with first_hop = true, order preserved.
std::vector<PacketRecord> filter_first_hop(const std::vector<PacketRecord>& records);

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<PacketRecord>& records);
std::vector<PacketRecord> read_records_csv(const std::filesystem::path& path);

}  // namespace ztap
