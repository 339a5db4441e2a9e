#include "ztap/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ztap/csv.hpp"

namespace ztap {

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = [] {
        std::array<std::string, kFeatureCount> n;
        const char* dirs[] = {"agg", "up", "down"};
        const char* signals[] = {"len", "iat"};
        const char* stats[] = {"mean", "std", "min", "max", "median", "skew", "kurt", "mad"};
        size_t i = 0;
        for (const char* d : dirs)
            for (const char* s : signals)
                for (const char* st : stats)
                    n[i++] = std::string(d) + "_" + s + "_" + st;
        n[i++] = "agg_count";
        n[i++] = "up_count";
        n[i++] = "down_count";
        return n;
    }();
    return names;
}

std::vector<Window> segment_windows(std::span<const PacketRecord> records, double window_s,
                                    double t0) {
    if (window_s <= 0.0)
        throw UsageError("invalid-window", "window duration must be positive, got " +
                                               format_double(window_s));
    std::vector<Window> out;
    Window cur;
    int64_t cur_slot = -1;
    auto flush = [&]() {
        if (cur.packets.size() >= 2) out.push_back(std::move(cur));
        cur = Window{};
    };

    for (const PacketRecord& r : records) {
        const int64_t slot = static_cast<int64_t>(std::floor((r.timestamp - t0) / window_s));
        if (slot != cur_slot) {
            flush();
            cur_slot = slot;
            cur.device_label = r.device_label;
            cur.category = r.category;
            cur.topology = r.topology;
            cur.t_start = t0 + static_cast<double>(slot) * window_s;
            cur.duration = window_s;
        }
        cur.packets.push_back(
            WindowPacket{r.timestamp, static_cast<double>(r.length), r.direction});
    }
    flush();
    return out;
}

namespace {

void append_summary(std::array<double, kFeatureCount>& values, size_t& i, const StatSummary& s) {
    values[i++] = s.mean;
    values[i++] = s.std_dev;
    values[i++] = s.min;
    values[i++] = s.max;
    values[i++] = s.median;
    values[i++] = s.skewness;
    values[i++] = s.kurtosis;
    values[i++] = s.mad;
}

std::vector<double> iats_of(const std::vector<double>& times) {
    std::vector<double> out;
    if (times.size() < 2) return out;
    out.reserve(times.size() - 1);
    for (size_t i = 1; i < times.size(); ++i) out.push_back(times[i] - times[i - 1]);
    return out;
}

}  // namespace

FeatureVector extract_features(const Window& window) {
    if (window.packets.size() < 2)
        throw DataError("invalid-window-content",
                        "feature extraction requires at least two packets per window");

    std::vector<WindowPacket> packets = window.packets;
    std::stable_sort(packets.begin(), packets.end(),
                     [](const WindowPacket& a, const WindowPacket& b) {
                         return a.timestamp < b.timestamp;
                     });

    std::vector<double> len_agg, len_up, len_down;
    std::vector<double> t_agg, t_up, t_down;
    for (const WindowPacket& p : packets) {
        len_agg.push_back(p.length);
        t_agg.push_back(p.timestamp);
        if (p.direction == Direction::Uplink) {
            len_up.push_back(p.length);
            t_up.push_back(p.timestamp);
        } else {
            len_down.push_back(p.length);
            t_down.push_back(p.timestamp);
        }
    }

    FeatureVector fv;
    fv.device_label = window.device_label;
    fv.category = window.category;
    fv.topology = window.topology;
    fv.t_start = window.t_start;
    fv.window_s = window.duration;

    size_t i = 0;
    const std::vector<double>* lens[] = {&len_agg, &len_up, &len_down};
    const std::vector<double>* times[] = {&t_agg, &t_up, &t_down};
    for (int d = 0; d < 3; ++d) {
        append_summary(fv.values, i, stat_summary(*lens[d]));
        append_summary(fv.values, i, stat_summary(iats_of(*times[d])));
    }
    fv.values[i++] = static_cast<double>(len_agg.size());
    fv.values[i++] = static_cast<double>(len_up.size());
    fv.values[i++] = static_cast<double>(len_down.size());
    return fv;
}

FeatureDataset extract_dataset(const std::vector<PacketRecord>& records, double window_s,
                               double t0) {
    std::map<std::string, std::vector<PacketRecord>> by_device;
    for (const PacketRecord& r : records) by_device[r.device_label].push_back(r);

    FeatureDataset ds;
    ds.window_s = window_s;
    for (auto& [label, recs] : by_device) {
        std::stable_sort(recs.begin(), recs.end(),
                         [](const PacketRecord& a, const PacketRecord& b) {
                             return a.timestamp < b.timestamp;
                         });
        for (const Window& w : segment_windows(recs, window_s, t0))
            ds.rows.push_back(extract_features(w));
    }
    return ds;
}

std::vector<std::pair<double, FeatureDataset>> sweep_windows(
    const std::vector<PacketRecord>& records, const std::vector<double>& window_list, double t0) {
    std::vector<std::pair<double, FeatureDataset>> out;
    out.reserve(window_list.size());
    for (double T : window_list) out.emplace_back(T, extract_dataset(records, T, t0));
    return out;
}

void write_features_csv(const std::filesystem::path& path, const FeatureDataset& ds) {
    CsvWriter out(path);
    std::vector<std::string> header = {"device_label", "category", "topology", "t_start",
                                       "window_s"};
    for (const std::string& n : feature_names()) header.push_back(n);
    out.row(header);

    for (const FeatureVector& fv : ds.rows) {
        std::vector<std::string> row = {fv.device_label, to_string(fv.category), fv.topology,
                                        format_double(fv.t_start), format_double(fv.window_s)};
        for (double v : fv.values) row.push_back(format_double(v));
        out.row(row);
    }
}

FeatureDataset read_features_csv(const std::filesystem::path& path) {
    CsvReader csv(path);
    const size_t c_label = csv.column("device_label");
    const size_t c_cat = csv.column("category");
    const size_t c_topo = csv.column("topology");
    const size_t c_t0 = csv.column("t_start");
    const size_t c_T = csv.column("window_s");
    std::array<size_t, kFeatureCount> c_feat{};
    for (size_t i = 0; i < kFeatureCount; ++i) c_feat[i] = csv.column(feature_names()[i]);

    FeatureDataset ds;
    std::vector<std::string> f;
    while (csv.next(f)) {
        FeatureVector fv;
        fv.device_label = f[c_label];
        fv.category = category_from_string(f[c_cat]);
        fv.topology = f[c_topo];
        fv.t_start = parse_double(f[c_t0]);
        fv.window_s = parse_double(f[c_T]);
        for (size_t i = 0; i < kFeatureCount; ++i) fv.values[i] = parse_double(f[c_feat[i]]);
        ds.rows.push_back(std::move(fv));
    }
    if (!ds.rows.empty()) ds.window_s = ds.rows.front().window_s;
    return ds;
}

}  // namespace ztap
