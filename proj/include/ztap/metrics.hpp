#pragma once

#include <map>

#include "ztap/features.hpp"
#include "ztap/gbdt.hpp"

namespace ztap {

struct FoldStat {
    double mean = 0.0;
    double std_dev = 0.0;  // population std over folds
};

struct EvalReport {
    std::vector<std::string> classes;
    std::vector<uint64_t> support;
    std::vector<double> precision, recall, f1;
    std::vector<std::vector<uint64_t>> confusion;  // rows = true, cols = predicted
    uint64_t total = 0;
    uint64_t correct = 0;
    uint64_t unseen_labels = 0;  // test rows whose label the model never saw
    double accuracy = 0.0;
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    double weighted_f1 = 0.0;
    int folds = 0;
    std::map<std::string, FoldStat> fold_stats;

    nlohmann::json to_json() const;
    void write_confusion_csv(const std::filesystem::path& path) const;
};

// Deterministic stratified folds: per-class counts differ by at most one
// across folds. Classes with fewer than k samples are dropped; their row
// indices are appended to `dropped` when provided.
std::vector<std::vector<size_t>> stratified_kfold(const std::vector<int>& y, size_t n_classes,
                                                  int k, uint64_t seed,
                                                  std::vector<size_t>* dropped = nullptr);

// Report over explicit predictions. y_true entries of -1 mark labels outside
// the class list; they count as errors in the unseen bucket.
EvalReport compute_report(const std::vector<std::string>& classes, const std::vector<int>& y_true,
                          const std::vector<int>& y_pred);

EvalReport evaluate(const GbdtModel& model, const DataMatrix& x,
                    const std::vector<std::string>& labels);

// Labeled matrix view of a feature dataset for one classification task.
struct LabeledData {
    DataMatrix x;
    std::vector<std::string> labels;       // per row
    std::vector<std::string> class_list;   // sorted unique labels
    std::vector<int> y;                    // index into class_list
};

LabeledData make_labeled(const FeatureDataset& ds, Task task);

// Stratified k-fold cross-validation: pooled confusion plus per-fold
// mean +/- std for the headline metrics.
EvalReport kfold_evaluate(const LabeledData& data, const TrainConfig& cfg, int k, uint64_t seed);

// Trains on the full training set, evaluates once on the test set.
EvalReport cross_topology_eval(const LabeledData& train, const LabeledData& test,
                               const TrainConfig& cfg);

}  // namespace ztap
