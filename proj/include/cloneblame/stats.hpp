#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace cloneblame::stats {

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::optional<double> p_value;  // two-sided t-test on the slope; empty when n < 3
    std::size_t n = 0;

    friend bool operator==(const RegressionResult&, const RegressionResult&) = default;
};

/// Ordinary least squares y = intercept + slope * x.
///
/// Constant y gives r^2 = 1 and p = 1. A perfect fit with non-zero slope has a
/// p-value that underflows; it is reported as the smallest positive double.
/// Throws InsufficientDataError for n < 2 and DegenerateInputError when all x
/// are equal.
RegressionResult linear_regression(std::span<const std::pair<double, double>> points);

enum class UTestMode { Exact, Approximate, Auto };

/// Which sample has the larger mean.
enum class Direction { AGreater, BGreater, Equal };

const char* to_string(Direction d);

struct UTestResult {
    double u1 = 0.0;  // pairs (a, b) with a > b, ties counting one half
    double u2 = 0.0;
    double p_value = 1.0;  // two-sided
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    Direction direction = Direction::Equal;
    bool exact = false;

    friend bool operator==(const UTestResult&, const UTestResult&) = default;
};

/// Sample sizes at or below this total use the exact distribution in Auto mode.
inline constexpr std::size_t kExactUTestLimit = 12;

/// Mann-Whitney U test with midranks for ties. Exact mode counts every
/// assignment of the pooled ranks to the first sample; approximate mode uses
/// the normal approximation with tie and continuity corrections.
/// Throws InsufficientDataError when either sample is empty.
UTestResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b,
                           UTestMode mode = UTestMode::Auto);

/// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

double normal_cdf(double z);

struct Summary {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
    std::size_t count = 0;

    friend bool operator==(const Summary&, const Summary&) = default;
};

/// Throws InsufficientDataError on an empty sample. Even-length medians are the
/// mean of the two middle values.
Summary summarize(std::span<const double> values);

double mean(std::span<const double> values);
double median(std::span<const double> values);

/// Linearly interpolated quantile (q in [0, 1]) of the sample.
double quantile(std::span<const double> values, double q);

}  // namespace cloneblame::stats
