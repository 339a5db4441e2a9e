#include "ztap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "ztap/csv.hpp"

namespace ztap {

std::vector<std::vector<size_t>> stratified_kfold(const std::vector<int>& y, size_t n_classes,
                                                  int k, uint64_t seed,
                                                  std::vector<size_t>* dropped) {
    if (k < 2) throw UsageError("bad-folds", "stratified k-fold requires k >= 2");

    std::vector<std::vector<size_t>> by_class(n_classes);
    for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] >= 0 && static_cast<size_t>(y[i]) < n_classes)
            by_class[static_cast<size_t>(y[i])].push_back(i);
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<size_t>> folds(static_cast<size_t>(k));
    for (size_t c = 0; c < n_classes; ++c) {
        auto& idx = by_class[c];
        if (idx.size() < static_cast<size_t>(k)) {
            if (dropped) dropped->insert(dropped->end(), idx.begin(), idx.end());
            continue;
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        // round-robin from a class-dependent offset keeps fold sizes even
        const size_t offset = c % static_cast<size_t>(k);
        for (size_t i = 0; i < idx.size(); ++i)
            folds[(offset + i) % static_cast<size_t>(k)].push_back(idx[i]);
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

EvalReport compute_report(const std::vector<std::string>& classes, const std::vector<int>& y_true,
                          const std::vector<int>& y_pred) {
    if (y_true.empty()) throw DataError("empty-eval", "cannot evaluate an empty test set");
    if (y_true.size() != y_pred.size())
        throw DataError("bad-eval", "prediction count does not match label count");

    const size_t n = classes.size();
    EvalReport rep;
    rep.classes = classes;
    rep.confusion.assign(n, std::vector<uint64_t>(n, 0));
    rep.support.assign(n, 0);
    std::vector<uint64_t> predicted(n, 0);

    for (size_t i = 0; i < y_true.size(); ++i) {
        ++rep.total;
        const int t = y_true[i];
        const int p = y_pred[i];
        if (p >= 0 && static_cast<size_t>(p) < n) ++predicted[static_cast<size_t>(p)];
        if (t < 0 || static_cast<size_t>(t) >= n) {
            ++rep.unseen_labels;  // counted as an error; prediction stays a false positive
            continue;
        }
        ++rep.support[static_cast<size_t>(t)];
        if (p >= 0 && static_cast<size_t>(p) < n)
            ++rep.confusion[static_cast<size_t>(t)][static_cast<size_t>(p)];
        if (t == p) ++rep.correct;
    }

    rep.precision.assign(n, 0.0);
    rep.recall.assign(n, 0.0);
    rep.f1.assign(n, 0.0);

    double macro_p = 0.0, macro_r = 0.0, macro_f = 0.0, weighted_f = 0.0;
    uint64_t active = 0, weight_total = 0;
    for (size_t c = 0; c < n; ++c) {
        const uint64_t tp = rep.confusion[c][c];
        const uint64_t fp = predicted[c] - tp;
        const uint64_t fn = rep.support[c] - tp;
        rep.precision[c] = (tp + fp) ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        rep.recall[c] = (tp + fn) ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        const double pr = rep.precision[c] + rep.recall[c];
        rep.f1[c] = (pr > 0.0) ? 2.0 * rep.precision[c] * rep.recall[c] / pr : 0.0;

        if (rep.support[c] > 0 || predicted[c] > 0) {
            ++active;
            macro_p += rep.precision[c];
            macro_r += rep.recall[c];
            macro_f += rep.f1[c];
        }
        weighted_f += static_cast<double>(rep.support[c]) * rep.f1[c];
        weight_total += rep.support[c];
    }

    rep.accuracy = static_cast<double>(rep.correct) / static_cast<double>(rep.total);
    if (active) {
        rep.macro_precision = macro_p / static_cast<double>(active);
        rep.macro_recall = macro_r / static_cast<double>(active);
        rep.macro_f1 = macro_f / static_cast<double>(active);
    }
    if (weight_total) rep.weighted_f1 = weighted_f / static_cast<double>(weight_total);
    return rep;
}

EvalReport evaluate(const GbdtModel& model, const DataMatrix& x,
                    const std::vector<std::string>& labels) {
    if (x.n_rows == 0) throw DataError("empty-eval", "cannot evaluate an empty test set");
    std::map<std::string, int> class_id;
    for (size_t c = 0; c < model.classes.size(); ++c)
        class_id[model.classes[c]] = static_cast<int>(c);

    std::vector<int> y_true(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        auto it = class_id.find(labels[i]);
        y_true[i] = (it == class_id.end()) ? -1 : it->second;
    }
    std::vector<size_t> pred = model.predict(x);
    std::vector<int> y_pred(pred.begin(), pred.end());
    return compute_report(model.classes, y_true, y_pred);
}

LabeledData make_labeled(const FeatureDataset& ds, Task task) {
    LabeledData out;
    std::set<std::string> uniq;
    for (const FeatureVector& fv : ds.rows) {
        const std::string label =
            (task == Task::DeviceType) ? to_string(fv.category) : fv.device_label;
        out.labels.push_back(label);
        uniq.insert(label);
        out.x.push_row(fv.values);
    }
    out.class_list.assign(uniq.begin(), uniq.end());
    std::map<std::string, int> id;
    for (size_t c = 0; c < out.class_list.size(); ++c) out.class_list[c], id[out.class_list[c]] = static_cast<int>(c);
    for (const std::string& l : out.labels) out.y.push_back(id[l]);
    return out;
}

namespace {

FoldStat fold_stat(const std::vector<double>& values) {
    FoldStat s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double m2 = 0.0;
    for (double v : values) m2 += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(m2 / static_cast<double>(values.size()));
    return s;
}

}  // namespace

EvalReport kfold_evaluate(const LabeledData& data, const TrainConfig& cfg, int k, uint64_t seed) {
    std::vector<size_t> dropped;
    const auto folds = stratified_kfold(data.y, data.class_list.size(), k, seed, &dropped);

    std::vector<int> all_true, all_pred;
    std::vector<double> acc, mf1, wf1, mp, mr;

    for (size_t fi = 0; fi < folds.size(); ++fi) {
        std::vector<char> in_test(data.x.n_rows, 0);
        for (size_t i : folds[fi]) in_test[i] = 1;
        std::vector<char> usable(data.x.n_rows, 1);
        for (size_t i : dropped) usable[i] = 0;

        DataMatrix train_x, test_x;
        train_x.n_cols = test_x.n_cols = data.x.n_cols;
        std::vector<int> train_y;
        std::vector<std::string> test_labels;
        for (size_t r = 0; r < data.x.n_rows; ++r) {
            if (!usable[r]) continue;
            if (in_test[r]) {
                test_x.push_row(std::span<const double>(data.x.row(r), data.x.n_cols));
                test_labels.push_back(data.labels[r]);
            } else {
                train_x.push_row(std::span<const double>(data.x.row(r), data.x.n_cols));
                train_y.push_back(data.y[r]);
            }
        }

        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = seed + fi;
        GbdtModel model = train_gbdt(train_x, train_y, data.class_list,
                                     std::vector<std::string>(data.x.n_cols == kFeatureCount
                                                                  ? feature_names().begin()
                                                                  : feature_names().begin(),
                                                              data.x.n_cols == kFeatureCount
                                                                  ? feature_names().end()
                                                                  : feature_names().begin()),
                                     fold_cfg);
        EvalReport fold_rep = evaluate(model, test_x, test_labels);
        acc.push_back(fold_rep.accuracy);
        mf1.push_back(fold_rep.macro_f1);
        wf1.push_back(fold_rep.weighted_f1);
        mp.push_back(fold_rep.macro_precision);
        mr.push_back(fold_rep.macro_recall);

        std::map<std::string, int> id;
        for (size_t c = 0; c < data.class_list.size(); ++c)
            id[data.class_list[c]] = static_cast<int>(c);
        size_t ti = 0;
        std::vector<size_t> pred = model.predict(test_x);
        for (const std::string& l : test_labels) {
            all_true.push_back(id[l]);
            all_pred.push_back(static_cast<int>(pred[ti++]));
        }
    }

    EvalReport rep = compute_report(data.class_list, all_true, all_pred);
    rep.folds = k;
    rep.fold_stats["accuracy"] = fold_stat(acc);
    rep.fold_stats["macro_f1"] = fold_stat(mf1);
    rep.fold_stats["weighted_f1"] = fold_stat(wf1);
    rep.fold_stats["macro_precision"] = fold_stat(mp);
    rep.fold_stats["macro_recall"] = fold_stat(mr);
    return rep;
}

EvalReport cross_topology_eval(const LabeledData& train, const LabeledData& test,
                               const TrainConfig& cfg) {
    std::set<std::string> train_classes(train.class_list.begin(), train.class_list.end());
    bool any_shared = false;
    for (const std::string& c : test.class_list)
        if (train_classes.count(c)) {
            any_shared = true;
            break;
        }
    if (!any_shared)
        throw DataError("disjoint-labels",
                        "training and test label spaces have an empty intersection");

    const std::vector<std::string> names(feature_names().begin(), feature_names().end());
    std::vector<std::string> order =
        train.x.n_cols == kFeatureCount
            ? names
            : std::vector<std::string>();
    if (order.empty())
        for (size_t i = 0; i < train.x.n_cols; ++i) order.push_back("f" + std::to_string(i));

    GbdtModel model = train_gbdt(train.x, train.y, train.class_list, order, cfg);
    return evaluate(model, test.x, test.labels);
}

nlohmann::json EvalReport::to_json() const {
    nlohmann::json per_class = nlohmann::json::object();
    for (size_t c = 0; c < classes.size(); ++c) {
        per_class[classes[c]] = {{"precision", precision[c]},
                                 {"recall", recall[c]},
                                 {"f1", f1[c]},
                                 {"support", support[c]}};
    }
    nlohmann::json folds_j = nlohmann::json::object();
    for (const auto& [name, st] : fold_stats)
        folds_j[name] = {{"mean", st.mean}, {"std", st.std_dev}};

    nlohmann::json conf = nlohmann::json::array();
    nlohmann::json conf_norm = nlohmann::json::array();
    for (size_t r = 0; r < confusion.size(); ++r) {
        conf.push_back(confusion[r]);
        nlohmann::json row = nlohmann::json::array();
        const double s = static_cast<double>(support[r]);
        for (uint64_t v : confusion[r]) row.push_back(s > 0 ? static_cast<double>(v) / s : 0.0);
        conf_norm.push_back(std::move(row));
    }

    return {{"classes", classes},
            {"per_class", per_class},
            {"accuracy", accuracy},
            {"macro_precision", macro_precision},
            {"macro_recall", macro_recall},
            {"macro_f1", macro_f1},
            {"weighted_f1", weighted_f1},
            {"total", total},
            {"correct", correct},
            {"unseen_labels", unseen_labels},
            {"folds", folds},
            {"fold_stats", folds_j},
            {"confusion", conf},
            {"confusion_normalized", conf_norm}};
}

void EvalReport::write_confusion_csv(const std::filesystem::path& path) const {
    CsvWriter out(path);
    std::vector<std::string> header = {"true\\pred"};
    for (const std::string& c : classes) header.push_back(c);
    out.row(header);
    for (size_t r = 0; r < confusion.size(); ++r) {
        std::vector<std::string> row = {classes[r]};
        for (uint64_t v : confusion[r]) row.push_back(std::to_string(v));
        out.row(row);
    }
}

}  // namespace ztap
