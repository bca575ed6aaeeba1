#include "cloneblame/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "cloneblame/errors.hpp"

namespace cloneblame::stats {

namespace {

constexpr double kBetaTolerance = 1e-14;
constexpr int kBetaMaxIterations = 10000;

double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) {
        d = tiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kBetaTolerance) {
            break;
        }
    }
    return h;
}

// Two-sided p for a t statistic: I_{df/(df+t^2)}(df/2, 1/2).
double two_sided_t_p(double t, double df) {
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

// Midranks (1-based) of the pooled sample, doubled so they are integers.
std::vector<long long> doubled_midranks(const std::vector<double>& pooled, std::vector<std::size_t>& tie_sizes) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<long long> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) {
            ++j;
        }
        // ranks i+1 .. j+1 averaged, doubled: (i + 1 + j + 1)
        const auto doubled = static_cast<long long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = doubled;
        }
        tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }
    return ranks;
}

// Distribution of the doubled rank sum of a size-k subset, counted over all
// C(n, k) subsets by dynamic programming over items.
std::vector<double> subset_sum_counts(const std::vector<long long>& values, std::size_t k) {
    const auto max_sum = static_cast<std::size_t>(std::accumulate(values.begin(), values.end(), 0LL));
    std::vector<std::vector<double>> ways(k + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (const long long v : values) {
        for (std::size_t c = k; c >= 1; --c) {
            auto& dst = ways[c];
            const auto& src = ways[c - 1];
            for (std::size_t s = max_sum; s >= static_cast<std::size_t>(v); --s) {
                dst[s] += src[s - static_cast<std::size_t>(v)];
            }
        }
    }
    return ways[k];
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

RegressionResult linear_regression(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    if (n < 2) {
        throw InsufficientDataError("linear regression needs at least two points");
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) {
        throw DegenerateInputError("linear regression: all x values are identical");
    }
    RegressionResult r;
    r.n = n;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
        const double e = y - (r.intercept + r.slope * x);
        ss_res += e * e;
    }
    // Residuals of an exact fit are rounding noise; treat them as zero.
    if (ss_res <= 1e-20 * syy) {
        ss_res = 0.0;
    }
    if (syy == 0.0) {
        r.r_squared = 1.0;
    } else {
        r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    if (n >= 3) {
        const auto df = static_cast<double>(n - 2);
        if (ss_res == 0.0) {
            r.p_value = r.slope == 0.0 ? 1.0 : std::numeric_limits<double>::denorm_min();
        } else {
            const double se = std::sqrt(ss_res / df / sxx);
            const double p = two_sided_t_p(r.slope / se, df);
            r.p_value = std::clamp(p, std::numeric_limits<double>::denorm_min(), 1.0);
        }
    }
    return r;
}

const char* to_string(Direction d) {
    switch (d) {
        case Direction::AGreater: return "a-greater";
        case Direction::BGreater: return "b-greater";
        case Direction::Equal: return "equal";
    }
    return "equal";
}

UTestResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b, UTestMode mode) {
    const std::size_t n1 = sample_a.size();
    const std::size_t n2 = sample_b.size();
    if (n1 == 0 || n2 == 0) {
        throw InsufficientDataError("Mann-Whitney U test needs two non-empty samples");
    }
    const std::size_t n = n1 + n2;
    std::vector<double> pooled(sample_a.begin(), sample_a.end());
    pooled.insert(pooled.end(), sample_b.begin(), sample_b.end());
    std::vector<std::size_t> ties;
    const auto ranks = doubled_midranks(pooled, ties);

    long long doubled_sum_a = 0;
    for (std::size_t i = 0; i < n1; ++i) {
        doubled_sum_a += ranks[i];
    }
    const double n1d = static_cast<double>(n1);
    const double n2d = static_cast<double>(n2);

    UTestResult r;
    r.n1 = n1;
    r.n2 = n2;
    r.u1 = static_cast<double>(doubled_sum_a) / 2.0 - n1d * (n1d + 1.0) / 2.0;
    r.u2 = n1d * n2d - r.u1;

    const double mean_a = mean(sample_a);
    const double mean_b = mean(sample_b);
    r.direction = mean_a > mean_b ? Direction::AGreater : (mean_b > mean_a ? Direction::BGreater : Direction::Equal);

    const bool exact = mode == UTestMode::Exact || (mode == UTestMode::Auto && n <= kExactUTestLimit);
    r.exact = exact;
    if (exact) {
        const auto counts = subset_sum_counts(ranks, n1);
        // E[doubled sum] = n1 (n + 1); compare doubled deviations as integers.
        const long long center = static_cast<long long>(n1) * static_cast<long long>(n + 1);
        const long long observed = std::llabs(doubled_sum_a - center);
        double extreme = 0.0;
        double total = 0.0;
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (counts[s] == 0.0) {
                continue;
            }
            total += counts[s];
            if (std::llabs(static_cast<long long>(s) - center) >= observed) {
                extreme += counts[s];
            }
        }
        r.p_value = std::min(1.0, extreme / total);
        return r;
    }

    double tie_term = 0.0;
    for (const auto t : ties) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double nd = static_cast<double>(n);
    const double variance = n1d * n2d / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
    if (variance <= 0.0) {
        r.p_value = 1.0;
        return r;
    }
    const double deviation = std::max(0.0, std::fabs(r.u1 - n1d * n2d / 2.0) - 0.5);
    const double z = deviation / std::sqrt(variance);
    r.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return r;
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw InsufficientDataError("mean of empty sample");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw InsufficientDataError("median of empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    return sorted.size() % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) {
        throw InsufficientDataError("quantile of empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) {
        throw InsufficientDataError("summary of empty sample");
    }
    Summary s;
    s.count = values.size();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    s.mean = mean(values);
    s.median = median(values);
    return s;
}

}  // namespace cloneblame::stats
