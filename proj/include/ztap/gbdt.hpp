#pragma once

#include <filesystem>

#include "json.hpp"
#include "ztap/common.hpp"

namespace ztap {

enum class Task : uint8_t { DeviceType = 0, DeviceIdentity = 1 };

const char* to_string(Task t);
Task task_from_string(const std::string& s);

struct TrainConfig {
    Task task = Task::DeviceType;
    int n_estimators = 300;
    int max_depth = 8;
    double learning_rate = 0.3;
    double subsample = 1.0;
    double l2_lambda = 1.0;        // L2 penalty on leaf weights
    double min_child_weight = 1.0; // minimum hessian sum per child
    uint64_t seed = 0;

    static TrainConfig defaults(Task task);
    nlohmann::json to_json() const;
    static TrainConfig from_json(const nlohmann::json& j);
};

// Dense row-major matrix of training/evaluation features.
struct DataMatrix {
    size_t n_rows = 0;
    size_t n_cols = 0;
    std::vector<double> values;

    double at(size_t r, size_t c) const { return values[r * n_cols + c]; }
    const double* row(size_t r) const { return values.data() + r * n_cols; }
    void push_row(std::span<const double> row);
};

struct TreeNode {
    int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int32_t left = -1;
    int32_t right = -1;
    double value = 0.0;  // leaf weight, learning rate already applied
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(const double* row) const;
};

// Gradient-boosted trees with a softmax multiclass objective: axis-aligned
// splits (x <= threshold goes left), one regression tree per class per round.
class GbdtModel {
public:
    std::vector<std::string> classes;
    std::vector<std::string> feature_order;
    TrainConfig config;
    std::vector<std::vector<Tree>> rounds;  // [round][class]

    size_t n_classes() const { return classes.size(); }

    void predict_margin(const double* row, std::span<double> out) const;
    std::vector<double> predict_proba(const double* row) const;  // softmax, sums to 1
    size_t predict_class(const double* row) const;
    std::vector<size_t> predict(const DataMatrix& x) const;

    nlohmann::json to_json() const;
    static GbdtModel from_json(const nlohmann::json& j);
    void save(const std::filesystem::path& path) const;
    static GbdtModel load(const std::filesystem::path& path);
};

// Trains on integer class ids in [0, classes.size()). Throws on single-class
// input or on a feature_order/matrix width mismatch.
GbdtModel train_gbdt(const DataMatrix& x, const std::vector<int>& y,
                     const std::vector<std::string>& classes,
                     const std::vector<std::string>& feature_order, const TrainConfig& cfg);

}  // namespace ztap
