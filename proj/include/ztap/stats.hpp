#pragma once

#include <cstdint>
#include <span>

namespace ztap {

// Population statistics of a value list. Zero-variance inputs (including
// singletons) report std = skewness = kurtosis = mad = 0; an empty input is
// all-zero with count 0.
struct StatSummary {
    double mean = 0.0;
    double std_dev = 0.0;
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
    double skewness = 0.0;   // m3 / m2^1.5
    double kurtosis = 0.0;   // m4 / m2^2 - 3 (excess)
    double mad = 0.0;        // mean absolute deviation around the mean
    uint64_t count = 0;
};

StatSummary stat_summary(std::span<const double> values);

}  // namespace ztap
