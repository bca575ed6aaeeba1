#include "cloneblame/boxplot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cloneblame/errors.hpp"
#include "cloneblame/stats.hpp"

namespace cloneblame::report {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

std::string escape_xml(std::string_view s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

BoxStats compute_box_stats(std::span<const double> values) {
    if (values.empty()) {
        throw InsufficientDataError("box plot of empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    BoxStats b;
    b.q1 = stats::quantile(sorted, 0.25);
    b.median = stats::quantile(sorted, 0.5);
    b.q3 = stats::quantile(sorted, 0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.lower_whisker = b.q1;
    b.upper_whisker = b.q3;
    for (const double v : sorted) {
        if (v < lo_fence || v > hi_fence) {
            b.outliers.push_back(v);
        } else {
            b.lower_whisker = std::min(b.lower_whisker, v);
            b.upper_whisker = std::max(b.upper_whisker, v);
        }
    }
    return b;
}

std::string emit_boxplot_svg(std::span<const BoxSeries> series, std::string_view title) {
    std::vector<std::pair<const BoxSeries*, BoxStats>> boxes;
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const auto& s : series) {
        if (s.values.empty()) {
            continue;
        }
        const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
        lo = first ? *mn : std::min(lo, *mn);
        hi = first ? *mx : std::max(hi, *mx);
        first = false;
        boxes.emplace_back(&s, compute_box_stats(s.values));
    }
    if (boxes.empty()) {
        throw InsufficientDataError("box plot of empty sample");
    }
    if (hi == lo) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const auto y = [&](double v) { return kMarginTop + (hi - v) / (hi - lo) * plot_h; };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
        << "</text>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft << "\" y2=\""
        << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        svg << "<text class=\"tick\" x=\"" << kMarginLeft - 6 << "\" y=\"" << y(v) + 4
            << "\" text-anchor=\"end\">" << v << "</text>\n";
    }

    const double slot = plot_w / static_cast<double>(boxes.size());
    const double box_w = std::min(80.0, slot * 0.5);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& [s, b] = boxes[i];
        const double cx = kMarginLeft + slot * (static_cast<double>(i) + 0.5);
        const double left = cx - box_w / 2;
        svg << "<g class=\"box\" data-label=\"" << escape_xml(s->label) << "\">\n";
        svg << "<line class=\"whisker\" x1=\"" << cx << "\" y1=\"" << y(b.upper_whisker) << "\" x2=\"" << cx
            << "\" y2=\"" << y(b.q3) << "\" stroke=\"black\"/>\n";
        svg << "<line class=\"whisker\" x1=\"" << cx << "\" y1=\"" << y(b.q1) << "\" x2=\"" << cx << "\" y2=\""
            << y(b.lower_whisker) << "\" stroke=\"black\"/>\n";
        svg << "<rect class=\"iqr\" x=\"" << left << "\" y=\"" << y(b.q3) << "\" width=\"" << box_w
            << "\" height=\"" << y(b.q1) - y(b.q3) << "\" fill=\"#cfe0f3\" stroke=\"black\"/>\n";
        svg << "<line class=\"median\" data-value=\"" << b.median << "\" x1=\"" << left << "\" y1=\""
            << y(b.median) << "\" x2=\"" << left + box_w << "\" y2=\"" << y(b.median)
            << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
        for (const double o : b.outliers) {
            svg << "<circle class=\"outlier\" data-value=\"" << o << "\" cx=\"" << cx << "\" cy=\"" << y(o)
                << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
        }
        svg << "<text x=\"" << cx << "\" y=\"" << kHeight - kMarginBottom + 20 << "\" text-anchor=\"middle\">"
            << escape_xml(s->label) << " (n=" << s->values.size() << ")</text>\n";
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string emit_boxplot_svg(std::span<const double> values, std::string_view label) {
    const BoxSeries one{std::string(label), {values.begin(), values.end()}};
    return emit_boxplot_svg(std::span<const BoxSeries>(&one, 1), label);
}

}  // namespace cloneblame::report
