#include "ztap/device_map.hpp"

#include <set>

#include "ztap/csv.hpp"

namespace ztap {

const char* to_string(DeviceCategory c) {
    switch (c) {
        case DeviceCategory::Bulb: return "Bulb";
        case DeviceCategory::Button: return "Button";
        case DeviceCategory::Coordinator: return "Coordinator";
        case DeviceCategory::Door: return "Door";
        case DeviceCategory::Motion: return "Motion";
        case DeviceCategory::Socket: return "Socket";
        case DeviceCategory::Temperature: return "Temperature";
    }
    return "?";
}

const char* to_string(DeviceRole r) {
    switch (r) {
        case DeviceRole::PANC: return "PANC";
        case DeviceRole::FFD: return "FFD";
        case DeviceRole::RFD: return "RFD";
    }
    return "?";
}

DeviceCategory category_from_string(const std::string& s) {
    static const std::pair<const char*, DeviceCategory> table[] = {
        {"Bulb", DeviceCategory::Bulb},        {"Button", DeviceCategory::Button},
        {"Coordinator", DeviceCategory::Coordinator}, {"Door", DeviceCategory::Door},
        {"Motion", DeviceCategory::Motion},    {"Socket", DeviceCategory::Socket},
        {"Temperature", DeviceCategory::Temperature},
    };
    for (const auto& [name, cat] : table)
        if (s == name) return cat;
    throw DataError("bad-category", "unknown device category: '" + s + "'");
}

DeviceRole role_from_string(const std::string& s) {
    if (s == "PANC") return DeviceRole::PANC;
    if (s == "FFD") return DeviceRole::FFD;
    if (s == "RFD") return DeviceRole::RFD;
    throw DataError("bad-role", "unknown device role: '" + s + "'");
}

DeviceMap DeviceMap::load_csv(const std::filesystem::path& path) {
    CsvReader csv(path);
    const size_t c_label = csv.column("label");
    const size_t c_cat = csv.column("category");
    const size_t c_role = csv.column("role");
    const size_t c_short = csv.column("short_addr");
    const size_t c_ext = csv.column("ext_addr");
    const size_t c_topo = csv.column("topology");

    std::vector<DeviceEntry> entries;
    std::vector<std::string> f;
    while (csv.next(f)) {
        DeviceEntry e;
        e.label = f[c_label];
        e.category = category_from_string(f[c_cat]);
        e.role = role_from_string(f[c_role]);
        e.short_addr = static_cast<uint16_t>(parse_hex(f[c_short]));
        if (!f[c_ext].empty()) e.ext_addr = parse_hex(f[c_ext]);
        e.topology = f[c_topo];
        entries.push_back(std::move(e));
    }
    return from_entries(std::move(entries));
}

DeviceMap DeviceMap::from_entries(std::vector<DeviceEntry> entries) {
    DeviceMap m;
    m.entries_ = std::move(entries);
    for (size_t i = 0; i < m.entries_.size(); ++i) {
        const DeviceEntry& e = m.entries_[i];
        auto [it, inserted] = m.by_short_.emplace(std::make_pair(e.topology, e.short_addr), i);
        if (!inserted)
            throw DataError("duplicate-short-addr",
                            "duplicate short address " + to_hex16(e.short_addr) +
                                " in topology '" + e.topology + "'");
        if (e.ext_addr) m.by_ext_.emplace(std::make_pair(e.topology, *e.ext_addr), i);
        if (e.role == DeviceRole::PANC) {
            auto [pit, pinserted] = m.panc_by_topology_.emplace(e.topology, i);
            if (!pinserted)
                throw DataError("multiple-panc",
                                "more than one PANC entry in topology '" + e.topology + "'");
        }
    }
    m.validate();
    return m;
}

void DeviceMap::validate() const {
    std::set<std::string> topologies;
    for (const DeviceEntry& e : entries_) topologies.insert(e.topology);
    for (const std::string& t : topologies) {
        if (!panc_by_topology_.count(t))
            throw DataError("missing-panc", "no PANC entry in topology '" + t + "'");
    }
}

void DeviceMap::save_csv(const std::filesystem::path& path) const {
    CsvWriter out(path);
    out.row({"label", "category", "role", "short_addr", "ext_addr", "topology"});
    for (const DeviceEntry& e : entries_) {
        out.row({e.label, to_string(e.category), to_string(e.role), to_hex16(e.short_addr),
                 e.ext_addr ? to_hex64(*e.ext_addr) : "", e.topology});
    }
}

std::vector<std::string> DeviceMap::topologies() const {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (const DeviceEntry& e : entries_)
        if (seen.insert(e.topology).second) out.push_back(e.topology);
    return out;
}

std::vector<const DeviceEntry*> DeviceMap::entries_for(const std::string& topology) const {
    std::vector<const DeviceEntry*> out;
    for (const DeviceEntry& e : entries_)
        if (e.topology == topology) out.push_back(&e);
    return out;
}

const DeviceEntry* DeviceMap::find_short(const std::string& topology, uint16_t short_addr) const {
    auto it = by_short_.find(std::make_pair(topology, short_addr));
    return it == by_short_.end() ? nullptr : &entries_[it->second];
}

const DeviceEntry* DeviceMap::find_ext(const std::string& topology, uint64_t ext_addr) const {
    auto it = by_ext_.find(std::make_pair(topology, ext_addr));
    return it == by_ext_.end() ? nullptr : &entries_[it->second];
}

const DeviceEntry& DeviceMap::panc(const std::string& topology) const {
    auto it = panc_by_topology_.find(topology);
    if (it == panc_by_topology_.end())
        throw DataError("missing-panc", "no PANC entry in topology '" + topology + "'");
    return entries_[it->second];
}

}  // namespace ztap
