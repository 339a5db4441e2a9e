#include "ztap/records.hpp"

#include "ztap/csv.hpp"

namespace ztap {

const char* to_string(Direction d) { return d == Direction::Uplink ? "uplink" : "downlink"; }

Direction direction_from_string(const std::string& s) {
    if (s == "uplink") return Direction::Uplink;
    if (s == "downlink") return Direction::Downlink;
    throw DataError("bad-direction", "unknown direction: '" + s + "'");
}

namespace {

// Short address of the MAC-layer transmitter; extended addresses are mapped
// through the device map when possible, else kNoShortAddr.
uint16_t mac_transmitter_short(const Mac154Frame& mac, const DeviceMap& map,
                               const std::string& topology) {
    if (!mac.src_addr) return kNoShortAddr;
    if (mac.src_addr->is_short()) return mac.src_addr->short_value();
    const DeviceEntry* e = map.find_ext(topology, mac.src_addr->value());
    return e ? e->short_addr : kNoShortAddr;
}

}  // namespace

std::vector<PacketRecord> build_records(const std::vector<DecodedFrame>& frames,
                                        const DeviceMap& map, const BuildOptions& opts,
                                        BuildSummary* summary) {
    BuildSummary local;
    BuildSummary& s = summary ? *summary : local;
    const uint16_t panc = map.panc_short(opts.topology);
    std::vector<PacketRecord> out;
    out.reserve(frames.size());

    for (const DecodedFrame& d : frames) {
        ++s.input_frames;

        if (!d.nwk) {
            if (opts.include_mac_commands && d.mac.frame_type == MacFrameType::MacCommand &&
                d.mac.src_addr && d.mac.dst_addr && d.mac.src_addr->is_short() &&
                d.mac.dst_addr->is_short()) {
                const uint16_t src = d.mac.src_addr->short_value();
                const uint16_t dst = d.mac.dst_addr->short_value();
                const DeviceEntry* dev = nullptr;
                Direction dir = Direction::Uplink;
                if (dst == panc && (dev = map.find_short(opts.topology, src)) != nullptr) {
                    dir = Direction::Uplink;
                } else if (src == panc && (dev = map.find_short(opts.topology, dst)) != nullptr) {
                    dir = Direction::Downlink;
                }
                if (dev && dev->role != DeviceRole::PANC) {
                    PacketRecord r;
                    r.timestamp = d.mac.timestamp;
                    r.device_label = dev->label;
                    r.category = dev->category;
                    r.direction = dir;
                    r.length = d.mac.captured_len;
                    r.nwk_src = src;
                    r.nwk_dst = dst;
                    r.mac_src = src;
                    r.first_hop = true;  // MAC commands are single-hop by construction
                    r.topology = opts.topology;
                    ++s.emitted;
                    out.push_back(std::move(r));
                    continue;
                }
            }
            ++s.skipped_no_nwk;
            continue;
        }

        const NwkFrame& n = *d.nwk;
        const uint16_t mac_src = mac_transmitter_short(d.mac, map, opts.topology);
        const DeviceEntry* dev = nullptr;
        Direction dir = Direction::Uplink;
        bool first_hop = false;

        if (n.dst_short >= kNwkBroadcastMin) {
            // Broadcasts are attributed to their originator; this is how the
            // coordinator accumulates a stream of its own.
            dev = map.find_short(opts.topology, n.src_short);
            if (!dev) {
                ++s.skipped_unknown_addr;
                continue;
            }
            dir = Direction::Uplink;
            first_hop = (mac_src == n.src_short);
        } else if (n.dst_short == panc && n.src_short != panc) {
            dev = map.find_short(opts.topology, n.src_short);
            if (!dev) {
                ++s.skipped_unknown_addr;
                continue;
            }
            dir = Direction::Uplink;
            first_hop = (mac_src == n.src_short);
        } else if (n.src_short == panc && n.dst_short != panc) {
            dev = map.find_short(opts.topology, n.dst_short);
            if (!dev) {
                ++s.skipped_unknown_addr;
                continue;
            }
            dir = Direction::Downlink;
            first_hop = (mac_src == panc);
        } else {
            ++s.skipped_non_panc;
            continue;
        }

        PacketRecord r;
        r.timestamp = d.mac.timestamp;
        r.device_label = dev->label;
        r.category = dev->category;
        r.direction = dir;
        r.length = d.mac.captured_len;
        r.nwk_src = n.src_short;
        r.nwk_dst = n.dst_short;
        r.mac_src = mac_src;
        r.first_hop = first_hop;
        r.topology = opts.topology;
        ++s.emitted;
        if (!first_hop) ++s.relayed;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<PacketRecord> filter_first_hop(const std::vector<PacketRecord>& records) {
    std::vector<PacketRecord> out;
    out.reserve(records.size());
    for (const PacketRecord& r : records)
        if (r.first_hop) out.push_back(r);
    return out;
}

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<PacketRecord>& records) {
    CsvWriter out(path);
    out.row({"timestamp", "device_label", "category", "direction", "length", "nwk_src",
             "nwk_dst", "mac_src", "first_hop", "topology"});
    for (const PacketRecord& r : records) {
        out.row({format_double(r.timestamp), r.device_label, to_string(r.category),
                 to_string(r.direction), std::to_string(r.length), to_hex16(r.nwk_src),
                 to_hex16(r.nwk_dst), to_hex16(r.mac_src), r.first_hop ? "1" : "0",
                 r.topology});
    }
}

std::vector<PacketRecord> read_records_csv(const std::filesystem::path& path) {
    CsvReader csv(path);
    const size_t c_ts = csv.column("timestamp");
    const size_t c_label = csv.column("device_label");
    const size_t c_cat = csv.column("category");
    const size_t c_dir = csv.column("direction");
    const size_t c_len = csv.column("length");
    const size_t c_src = csv.column("nwk_src");
    const size_t c_dst = csv.column("nwk_dst");
    const size_t c_mac = csv.column("mac_src");
    const size_t c_fh = csv.column("first_hop");
    const size_t c_topo = csv.column("topology");

    std::vector<PacketRecord> out;
    std::vector<std::string> f;
    while (csv.next(f)) {
        PacketRecord r;
        r.timestamp = parse_double(f[c_ts]);
        r.device_label = f[c_label];
        r.category = category_from_string(f[c_cat]);
        r.direction = direction_from_string(f[c_dir]);
        r.length = static_cast<uint32_t>(std::stoul(f[c_len]));
        r.nwk_src = static_cast<uint16_t>(parse_hex(f[c_src]));
        r.nwk_dst = static_cast<uint16_t>(parse_hex(f[c_dst]));
        r.mac_src = static_cast<uint16_t>(parse_hex(f[c_mac]));
        r.first_hop = (f[c_fh] == "1");
        r.topology = f[c_topo];
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ztap
