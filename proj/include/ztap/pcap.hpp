#pragma once

#include <filesystem>
#include <fstream>
#include <optional>

#include "ztap/common.hpp"

namespace ztap {

// Classic pcap link-layer codes for IEEE 802.15.4.
inline constexpr uint32_t kLink802154WithFcs = 195;
inline constexpr uint32_t kLink802154NoFcs = 230;

struct CaptureMeta {
    uint32_t link_type = 0;
    double t_start = 0.0;  // seconds, capture-relative epoch
    double t_end = 0.0;
    uint64_t frame_count = 0;
    uint64_t byte_count = 0;  // sum of captured lengths
    std::vector<std::string> warnings;
};

struct RawFrame {
    double timestamp = 0.0;  // seconds
    uint32_t orig_len = 0;
    Bytes data;  // captured bytes (MPDU, with FCS when the link type carries it)
};

// Sequential reader for classic pcap files (microsecond and nanosecond
// variants, either byte order). Only IEEE 802.15.4 link types are accepted.
class PcapReader {
public:
    explicit PcapReader(const std::filesystem::path& path);

    // Next frame in file order, or nullopt at end of file.
    std::optional<RawFrame> next();

    const CaptureMeta& meta() const { return meta_; }
    uint32_t link_type() const { return meta_.link_type; }
    bool fcs_present() const { return meta_.link_type == kLink802154WithFcs; }

private:
    std::ifstream in_;
    std::filesystem::path path_;
    CaptureMeta meta_;
    bool swapped_ = false;
    bool nanosecond_ = false;
    uint64_t record_index_ = 0;
    double last_ts_ = 0.0;
    bool warned_order_ = false;

    uint32_t fix32(uint32_t v) const;
};

struct Capture {
    std::vector<RawFrame> frames;
    CaptureMeta meta;
};

Capture read_pcap(const std::filesystem::path& path);

// Writer for classic microsecond pcap. Timestamps are integer microseconds.
class PcapWriter {
public:
    explicit PcapWriter(uint32_t link_type) : link_type_(link_type) { write_header(); }

    void write(uint64_t t_us, ByteSpan frame);
    const Bytes& bytes() const { return buf_; }
    void save(const std::filesystem::path& path) const;

private:
    void write_header();
    uint32_t link_type_;
    Bytes buf_;
};

}  // namespace ztap
