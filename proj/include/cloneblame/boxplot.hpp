#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cloneblame::report {

struct BoxStats {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double lower_whisker = 0.0;  // smallest value >= q1 - 1.5 IQR
    double upper_whisker = 0.0;  // largest value <= q3 + 1.5 IQR
    std::vector<double> outliers;  // ascending

    friend bool operator==(const BoxStats&, const BoxStats&) = default;
};

/// Throws InsufficientDataError on empty input.
BoxStats compute_box_stats(std::span<const double> values);

struct BoxSeries {
    std::string label;
    std::vector<double> values;
};

/// Standalone SVG with one box per non-empty series on a shared linear axis.
/// Throws InsufficientDataError when every series is empty.
std::string emit_boxplot_svg(std::span<const BoxSeries> series, std::string_view title);

std::string emit_boxplot_svg(std::span<const double> values, std::string_view label);

}  // namespace cloneblame::report
