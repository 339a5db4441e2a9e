#include "ztap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ztap {

StatSummary stat_summary(std::span<const double> values) {
    StatSummary s;
    s.count = values.size();
    if (values.empty()) return s;

    double sum = 0.0;
    double lo = values[0], hi = values[0];
    for (double v : values) {
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double n = static_cast<double>(values.size());
    s.mean = sum / n;
    s.min = lo;
    s.max = hi;

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const size_t half = sorted.size() / 2;
    s.median = (sorted.size() % 2) ? sorted[half] : 0.5 * (sorted[half - 1] + sorted[half]);

    if (lo == hi) return s;  // zero variance: spread statistics stay 0

    double m2 = 0.0, m3 = 0.0, m4 = 0.0, abs_dev = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        abs_dev += std::abs(d);
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.std_dev = std::sqrt(m2);
    s.skewness = m3 / (m2 * std::sqrt(m2));
    s.kurtosis = m4 / (m2 * m2) - 3.0;
    s.mad = abs_dev / n;
    return s;
}

}  // namespace ztap
