#pragma once

#include <array>
#include <filesystem>

#include "ztap/records.hpp"
#include "ztap/stats.hpp"

namespace ztap {

inline constexpr size_t kFeatureCount = 51;

// Canonical order: for each direction in {agg, up, down}, for each signal in
// {len, iat}, the statistics [mean, std, min, max, median, skew, kurt, mad];
// then the three packet counts [agg, up, down].
const std::array<std::string, kFeatureCount>& feature_names();

struct WindowPacket {
    double timestamp = 0.0;
    double length = 0.0;
    Direction direction = Direction::Uplink;
};

struct Window {
    std::string device_label;
    DeviceCategory category = DeviceCategory::Temperature;
    std::string topology;
    double t_start = 0.0;  // grid-aligned
    double duration = 0.0;
    std::vector<WindowPacket> packets;
};

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    std::string device_label;
    DeviceCategory category = DeviceCategory::Temperature;
    std::string topology;
    double t_start = 0.0;
    double window_s = 0.0;
};

struct FeatureDataset {
    double window_s = 0.0;
    std::vector<FeatureVector> rows;
};

// Splits one device's records onto the global window grid anchored at t0.
// Windows with fewer than two packets are discarded; empty windows are never
// materialized. Records must be sorted by timestamp.
std::vector<Window> segment_windows(std::span<const PacketRecord> records, double window_s,
                                    double t0);

FeatureVector extract_features(const Window& window);

// Full pipeline over a mixed-device record list: group by device, segment on
// the shared grid, extract. Rows ordered by (device_label, t_start).
FeatureDataset extract_dataset(const std::vector<PacketRecord>& records, double window_s,
                               double t0);

std::vector<std::pair<double, FeatureDataset>> sweep_windows(
    const std::vector<PacketRecord>& records, const std::vector<double>& window_list, double t0);

void write_features_csv(const std::filesystem::path& path, const FeatureDataset& ds);
FeatureDataset read_features_csv(const std::filesystem::path& path);

}  // namespace ztap
