#include "ztap/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

namespace ztap {

const char* to_string(Task t) { return t == Task::DeviceType ? "type" : "identity"; }

Task task_from_string(const std::string& s) {
    if (s == "type") return Task::DeviceType;
    if (s == "identity") return Task::DeviceIdentity;
    throw UsageError("bad-task", "unknown task: '" + s + "' (expected 'type' or 'identity')");
}

TrainConfig TrainConfig::defaults(Task task) {
    TrainConfig cfg;
    cfg.task = task;
    if (task == Task::DeviceType) {
        cfg.max_depth = 8;
        cfg.subsample = 1.0;
    } else {
        cfg.max_depth = 10;
        cfg.subsample = 0.8;
    }
    return cfg;
}

nlohmann::json TrainConfig::to_json() const {
    return {{"task", to_string(task)},
            {"n_estimators", n_estimators},
            {"max_depth", max_depth},
            {"learning_rate", learning_rate},
            {"subsample", subsample},
            {"l2_lambda", l2_lambda},
            {"min_child_weight", min_child_weight},
            {"seed", seed}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
    TrainConfig cfg;
    cfg.task = task_from_string(j.at("task").get<std::string>());
    cfg.n_estimators = j.at("n_estimators").get<int>();
    cfg.max_depth = j.at("max_depth").get<int>();
    cfg.learning_rate = j.at("learning_rate").get<double>();
    cfg.subsample = j.at("subsample").get<double>();
    cfg.l2_lambda = j.at("l2_lambda").get<double>();
    cfg.min_child_weight = j.at("min_child_weight").get<double>();
    cfg.seed = j.at("seed").get<uint64_t>();
    return cfg;
}

void DataMatrix::push_row(std::span<const double> row) {
    if (n_rows == 0 && n_cols == 0) n_cols = row.size();
    if (row.size() != n_cols)
        throw DataError("bad-matrix", "row width " + std::to_string(row.size()) +
                                          " does not match matrix width " +
                                          std::to_string(n_cols));
    values.insert(values.end(), row.begin(), row.end());
    ++n_rows;
}

double Tree::predict(const double* row) const {
    int32_t node = 0;
    while (nodes[static_cast<size_t>(node)].feature >= 0) {
        const TreeNode& n = nodes[static_cast<size_t>(node)];
        node = (row[n.feature] <= n.threshold) ? n.left : n.right;
    }
    return nodes[static_cast<size_t>(node)].value;
}

void GbdtModel::predict_margin(const double* row, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& round : rounds)
        for (size_t c = 0; c < round.size(); ++c) out[c] += round[c].predict(row);
}

std::vector<double> GbdtModel::predict_proba(const double* row) const {
    std::vector<double> margin(n_classes(), 0.0);
    predict_margin(row, margin);
    const double m = *std::max_element(margin.begin(), margin.end());
    double sum = 0.0;
    for (double& v : margin) {
        v = std::exp(v - m);
        sum += v;
    }
    for (double& v : margin) v /= sum;
    return margin;
}

size_t GbdtModel::predict_class(const double* row) const {
    std::vector<double> margin(n_classes(), 0.0);
    predict_margin(row, margin);
    return static_cast<size_t>(
        std::max_element(margin.begin(), margin.end()) - margin.begin());
}

std::vector<size_t> GbdtModel::predict(const DataMatrix& x) const {
    if (x.n_cols != feature_order.size())
        throw DataError("feature-order-mismatch",
                        "matrix has " + std::to_string(x.n_cols) + " columns, model expects " +
                            std::to_string(feature_order.size()));
    std::vector<size_t> out(x.n_rows);
    for (size_t r = 0; r < x.n_rows; ++r) out[r] = predict_class(x.row(r));
    return out;
}

namespace {

constexpr size_t kMaxBins = 64;

// Quantile bins per feature. bin(x) is the index of the first cut >= x, so a
// split at bin s sends x <= cuts[s] left; thresholds are actual data values.
struct BinMap {
    std::vector<std::vector<double>> cuts;   // per feature, ascending
    std::vector<uint32_t> offset;            // start of each feature's bin range
    uint32_t total_bins = 0;

    uint16_t bin(size_t f, double x) const {
        const auto& c = cuts[f];
        return static_cast<uint16_t>(std::lower_bound(c.begin(), c.end(), x) - c.begin());
    }
};

BinMap build_bins(const DataMatrix& x) {
    BinMap map;
    map.cuts.resize(x.n_cols);
    map.offset.resize(x.n_cols + 1);
    std::vector<double> col(x.n_rows);
    for (size_t f = 0; f < x.n_cols; ++f) {
        for (size_t r = 0; r < x.n_rows; ++r) col[r] = x.at(r, f);
        std::sort(col.begin(), col.end());
        auto last = std::unique(col.begin(), col.end());
        const size_t distinct = static_cast<size_t>(last - col.begin());
        std::vector<double>& cuts = map.cuts[f];
        if (distinct > 1) {
            if (distinct <= kMaxBins) {
                cuts.assign(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(distinct) - 1);
            } else {
                for (size_t k = 1; k < kMaxBins; ++k) {
                    const double v = col[k * distinct / kMaxBins];
                    if (cuts.empty() || v > cuts.back()) cuts.push_back(v);
                }
                while (!cuts.empty() && cuts.back() >= col[distinct - 1]) cuts.pop_back();
            }
        }
        map.offset[f] = map.total_bins;
        map.total_bins += static_cast<uint32_t>(cuts.size()) + 1;
    }
    map.offset[x.n_cols] = map.total_bins;
    return map;
}

struct HistBin {
    double g = 0.0;
    double h = 0.0;
    uint32_t n = 0;
    uint32_t gen = 0;  // lazily invalidated; avoids clearing the table per node
};

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    uint16_t bin = 0;
    double threshold = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const DataMatrix& x, const BinMap& bins, const std::vector<uint16_t>& binned,
                const TrainConfig& cfg)
        : x_(x), bins_(bins), binned_(binned), cfg_(cfg), hist_(bins.total_bins) {}

    Tree build(std::vector<uint32_t>& rows, const std::vector<double>& grad,
               const std::vector<double>& hess) {
        grad_ = &grad;
        hess_ = &hess;
        Tree tree;
        double g = 0.0, h = 0.0;
        for (uint32_t r : rows) {
            g += grad[r];
            h += hess[r];
        }
        grow(tree, rows, 0, rows.size(), 0, g, h);
        return tree;
    }

private:
    int32_t grow(Tree& tree, std::vector<uint32_t>& rows, size_t begin, size_t end, int depth,
                 double g_sum, double h_sum) {
        const int32_t id = static_cast<int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();

        SplitChoice best;
        if (depth < cfg_.max_depth && end - begin >= 2)
            best = find_split(rows, begin, end, g_sum, h_sum);

        if (best.feature < 0) {
            tree.nodes[static_cast<size_t>(id)].value =
                -cfg_.learning_rate * g_sum / (h_sum + cfg_.l2_lambda);
            return id;
        }

        const size_t mid = partition(rows, begin, end, best);
        double gl = 0.0, hl = 0.0;
        for (size_t i = begin; i < mid; ++i) {
            gl += (*grad_)[rows[i]];
            hl += (*hess_)[rows[i]];
        }

        tree.nodes[static_cast<size_t>(id)].feature = best.feature;
        tree.nodes[static_cast<size_t>(id)].threshold = best.threshold;
        const int32_t left = grow(tree, rows, begin, mid, depth + 1, gl, hl);
        const int32_t right = grow(tree, rows, mid, end, depth + 1, g_sum - gl, h_sum - hl);
        tree.nodes[static_cast<size_t>(id)].left = left;
        tree.nodes[static_cast<size_t>(id)].right = right;
        return id;
    }

    SplitChoice find_split(const std::vector<uint32_t>& rows, size_t begin, size_t end,
                           double g_sum, double h_sum) {
        const size_t n_cols = x_.n_cols;
        ++gen_;
        for (size_t i = begin; i < end; ++i) {
            const uint32_t r = rows[i];
            const double g = (*grad_)[r];
            const double h = (*hess_)[r];
            const uint16_t* brow = binned_.data() + static_cast<size_t>(r) * n_cols;
            for (size_t f = 0; f < n_cols; ++f) {
                HistBin& b = hist_[bins_.offset[f] + brow[f]];
                if (b.gen != gen_) {
                    b.g = g;
                    b.h = h;
                    b.n = 1;
                    b.gen = gen_;
                } else {
                    b.g += g;
                    b.h += h;
                    b.n += 1;
                }
            }
        }

        const double lambda = cfg_.l2_lambda;
        const double parent_score = g_sum * g_sum / (h_sum + lambda);
        const uint32_t node_n = static_cast<uint32_t>(end - begin);
        SplitChoice best;
        for (size_t f = 0; f < n_cols; ++f) {
            const size_t n_cuts = bins_.cuts[f].size();
            if (n_cuts == 0) continue;
            const HistBin* fh = hist_.data() + bins_.offset[f];
            double gl = 0.0, hl = 0.0;
            uint32_t nl = 0;
            for (size_t s = 0; s < n_cuts; ++s) {
                if (fh[s].gen == gen_) {
                    gl += fh[s].g;
                    hl += fh[s].h;
                    nl += fh[s].n;
                }
                if (nl == 0) continue;
                if (nl == node_n) break;
                const double hr = h_sum - hl;
                if (hl < cfg_.min_child_weight || hr < cfg_.min_child_weight) continue;
                const double gr = g_sum - gl;
                const double gain = 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                                           parent_score);
                if (gain > best.gain + 1e-12) {
                    best.gain = gain;
                    best.feature = static_cast<int>(f);
                    best.bin = static_cast<uint16_t>(s);
                    best.threshold = bins_.cuts[f][s];
                }
            }
        }
        return best;
    }

    size_t partition(std::vector<uint32_t>& rows, size_t begin, size_t end,
                     const SplitChoice& split) {
        const size_t n_cols = x_.n_cols;
        const auto goes_left = [&](uint32_t r) {
            return binned_[static_cast<size_t>(r) * n_cols + static_cast<size_t>(split.feature)] <=
                   split.bin;
        };
        auto it = std::partition(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                                 rows.begin() + static_cast<std::ptrdiff_t>(end), goes_left);
        return static_cast<size_t>(it - rows.begin());
    }

    const DataMatrix& x_;
    const BinMap& bins_;
    const std::vector<uint16_t>& binned_;
    const TrainConfig& cfg_;
    std::vector<HistBin> hist_;
    uint32_t gen_ = 0;
    const std::vector<double>* grad_ = nullptr;
    const std::vector<double>* hess_ = nullptr;
};

}  // namespace

GbdtModel train_gbdt(const DataMatrix& x, const std::vector<int>& y,
                     const std::vector<std::string>& classes,
                     const std::vector<std::string>& feature_order, const TrainConfig& cfg) {
    if (classes.size() < 2)
        throw DataError("single-class", "training requires at least two classes, got " +
                                            std::to_string(classes.size()));
    if (x.n_cols != feature_order.size())
        throw DataError("feature-order-mismatch",
                        "matrix has " + std::to_string(x.n_cols) +
                            " columns but the feature order names " +
                            std::to_string(feature_order.size()));
    if (x.n_rows == 0 || y.size() != x.n_rows)
        throw DataError("bad-matrix", "label count does not match row count");
    if (cfg.n_estimators <= 0 || cfg.max_depth < 1 || cfg.subsample <= 0.0 ||
        cfg.subsample > 1.0)
        throw UsageError("bad-config", "invalid training configuration");

    const size_t n_rows = x.n_rows;
    const size_t n_classes = classes.size();

    const BinMap bins = build_bins(x);
    std::vector<uint16_t> binned(n_rows * x.n_cols);
    for (size_t r = 0; r < n_rows; ++r)
        for (size_t f = 0; f < x.n_cols; ++f)
            binned[r * x.n_cols + f] = bins.bin(f, x.at(r, f));

    GbdtModel model;
    model.classes = classes;
    model.feature_order = feature_order;
    model.config = cfg;
    model.rounds.reserve(static_cast<size_t>(cfg.n_estimators));

    std::vector<double> margin(n_rows * n_classes, 0.0);
    std::vector<double> prob(n_rows * n_classes);
    std::vector<double> grad(n_rows), hess(n_rows);
    std::mt19937_64 rng(cfg.seed);
    TreeBuilder builder(x, bins, binned, cfg);

    std::vector<uint32_t> sampled;
    sampled.reserve(n_rows);
    std::vector<uint32_t> rows;
    rows.reserve(n_rows);

    for (int round = 0; round < cfg.n_estimators; ++round) {
        sampled.clear();
        if (cfg.subsample < 1.0) {
            for (uint32_t r = 0; r < n_rows; ++r) {
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                if (u < cfg.subsample) sampled.push_back(r);
            }
            if (sampled.empty()) sampled.push_back(static_cast<uint32_t>(rng() % n_rows));
        } else {
            for (uint32_t r = 0; r < n_rows; ++r) sampled.push_back(r);
        }

        for (size_t r = 0; r < n_rows; ++r) {
            const double* m = margin.data() + r * n_classes;
            double* p = prob.data() + r * n_classes;
            const double mx = *std::max_element(m, m + n_classes);
            double sum = 0.0;
            for (size_t k = 0; k < n_classes; ++k) {
                p[k] = std::exp(m[k] - mx);
                sum += p[k];
            }
            for (size_t k = 0; k < n_classes; ++k) p[k] /= sum;
        }

        std::vector<Tree> round_trees;
        round_trees.reserve(n_classes);
        for (size_t c = 0; c < n_classes; ++c) {
            for (size_t r = 0; r < n_rows; ++r) {
                const double p = prob[r * n_classes + c];
                grad[r] = p - (static_cast<size_t>(y[r]) == c ? 1.0 : 0.0);
                hess[r] = std::max(p * (1.0 - p), 1e-16);
            }
            rows = sampled;
            round_trees.push_back(builder.build(rows, grad, hess));
        }

        for (size_t c = 0; c < n_classes; ++c)
            for (size_t r = 0; r < n_rows; ++r)
                margin[r * n_classes + c] += round_trees[c].predict(x.row(r));
        model.rounds.push_back(std::move(round_trees));
    }
    return model;
}

nlohmann::json GbdtModel::to_json() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& round : rounds) {
        nlohmann::json rj = nlohmann::json::array();
        for (const Tree& t : round) {
            nlohmann::json nodes = nlohmann::json::array();
            for (const TreeNode& n : t.nodes)
                nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
            rj.push_back(std::move(nodes));
        }
        trees.push_back(std::move(rj));
    }
    return {{"format", "ztap-gbdt"},
            {"version", 1},
            {"classes", classes},
            {"feature_order", feature_order},
            {"config", config.to_json()},
            {"trees", std::move(trees)}};
}

GbdtModel GbdtModel::from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "ztap-gbdt")
        throw DataError("bad-model", "not a ztap-gbdt model document");
    GbdtModel m;
    m.classes = j.at("classes").get<std::vector<std::string>>();
    m.feature_order = j.at("feature_order").get<std::vector<std::string>>();
    m.config = TrainConfig::from_json(j.at("config"));
    for (const auto& rj : j.at("trees")) {
        std::vector<Tree> round;
        for (const auto& tj : rj) {
            Tree t;
            for (const auto& nj : tj) {
                TreeNode n;
                n.feature = nj.at(0).get<int32_t>();
                n.threshold = nj.at(1).get<double>();
                n.left = nj.at(2).get<int32_t>();
                n.right = nj.at(3).get<int32_t>();
                n.value = nj.at(4).get<double>();
                t.nodes.push_back(n);
            }
            round.push_back(std::move(t));
        }
        m.rounds.push_back(std::move(round));
    }
    return m;
}

void GbdtModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("unwritable-file", "cannot write model file: " + path.string());
    out << to_json().dump();
}

GbdtModel GbdtModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("unreadable-file", "cannot open model file: " + path.string());
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

}  // namespace ztap
