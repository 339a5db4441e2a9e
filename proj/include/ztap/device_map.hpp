#pragma once

#include <filesystem>
#include <map>

#include "ztap/common.hpp"

namespace ztap {

enum class DeviceCategory : uint8_t {
    Bulb = 0, Button, Coordinator, Door, Motion, Socket, Temperature
};
enum class DeviceRole : uint8_t { PANC = 0, FFD, RFD };

const char* to_string(DeviceCategory c);
const char* to_string(DeviceRole r);
DeviceCategory category_from_string(const std::string& s);
DeviceRole role_from_string(const std::string& s);

struct DeviceEntry {
    std::string label;
    DeviceCategory category = DeviceCategory::Temperature;
    DeviceRole role = DeviceRole::RFD;
    uint16_t short_addr = 0;
    std::optional<uint64_t> ext_addr;
    std::string topology;
};

// Address-to-identity mapping for one or more topologies. Each topology has
// exactly one PAN coordinator entry and unique short addresses.
class DeviceMap {
public:
    static DeviceMap load_csv(const std::filesystem::path& path);
    static DeviceMap from_entries(std::vector<DeviceEntry> entries);

    void save_csv(const std::filesystem::path& path) const;

    const std::vector<DeviceEntry>& entries() const { return entries_; }
    std::vector<std::string> topologies() const;
    std::vector<const DeviceEntry*> entries_for(const std::string& topology) const;

    const DeviceEntry* find_short(const std::string& topology, uint16_t short_addr) const;
    const DeviceEntry* find_ext(const std::string& topology, uint64_t ext_addr) const;
    const DeviceEntry& panc(const std::string& topology) const;
    uint16_t panc_short(const std::string& topology) const { return panc(topology).short_addr; }

private:
    void validate() const;
    std::vector<DeviceEntry> entries_;
    std::map<std::pair<std::string, uint16_t>, size_t> by_short_;
    std::map<std::pair<std::string, uint64_t>, size_t> by_ext_;
    std::map<std::string, size_t> panc_by_topology_;
};

}  // namespace ztap
