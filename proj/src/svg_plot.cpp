#include "steelclust/svg_plot.h"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "steelclust/error.h"

namespace steelclust {

namespace {

constexpr double kPlotLeft = 70.0;
constexpr double kPlotRight = 620.0;
constexpr double kPlotTop = 50.0;
constexpr double kPlotBottom = 540.0;

const char* const kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a",
};
constexpr size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
constexpr const char* kNoiseColor = "#888888";
constexpr const char* kUndefinedColor = "#444444";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escapeXml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string tickLabelText(const std::string& symbol) {
    const bool ascii =
        std::all_of(symbol.begin(), symbol.end(), [](char c) { return (c & 0x80) == 0; });
    if (ascii && symbol.size() > 12) return symbol.substr(0, 10) + "..";
    return symbol;
}

struct Axis {
    const AttributeSpec* spec = nullptr;
    bool nominal = false;
    double lo = 0.0;
    double hi = 1.0;

    double valueAt(const Dataset& d, size_t row, size_t attr) const {
        return nominal ? static_cast<double>(d.rows[row][attr].sym()) : d.numAt(row, attr);
    }
};

Axis axisFor(const Dataset& d, size_t attr) {
    Axis axis;
    axis.spec = &d.schema[attr];
    axis.nominal = axis.spec->kind == AttributeKind::Nominal;
    if (axis.nominal) {
        const auto m = static_cast<double>(axis.spec->domain.size());
        axis.lo = -0.5;
        axis.hi = m > 0.0 ? m - 0.5 : 0.5;
    } else if (d.n() == 0) {
        axis.lo = 0.0;
        axis.hi = 1.0;
    } else {
        double lo = d.numAt(0, attr);
        double hi = lo;
        for (size_t row = 1; row < d.n(); ++row) {
            lo = std::min(lo, d.numAt(row, attr));
            hi = std::max(hi, d.numAt(row, attr));
        }
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        }
        axis.lo = lo;
        axis.hi = hi;
    }
    return axis;
}

struct Tick {
    double pos = 0.0;
    std::string label;
};

std::vector<Tick> ticksFor(const Axis& axis) {
    std::vector<Tick> ticks;
    if (axis.nominal) {
        const size_t m = axis.spec->domain.size();
        if (m == 0) return ticks;
        const size_t step = (m + 11) / 12;
        const bool bySymbol = m <= 12;
        for (size_t i = 0; i < m; i += step) {
            ticks.push_back({static_cast<double>(i),
                             bySymbol ? tickLabelText(axis.spec->domain[i]) : std::to_string(i)});
        }
    } else {
        for (int i = 0; i <= 4; ++i) {
            const double v = axis.lo + (axis.hi - axis.lo) * i / 4.0;
            ticks.push_back({v, fmt(v)});
        }
    }
    return ticks;
}

std::string axisTitle(const AttributeSpec& spec) {
    std::string title = spec.name;
    if (!spec.units.empty()) title += " (" + spec.units + ")";
    return title;
}

const char* colorFor(int label) {
    if (label == ClusterAssignment::kNoise) return kNoiseColor;
    if (label < 0) return kUndefinedColor;
    return kPalette[static_cast<size_t>(label) % kPaletteSize];
}

} // namespace

std::string scatterSvg(const Dataset& d, int xAttr, int yAttr,
                       const ClusterAssignment& assignment) {
    if (xAttr < 0 || static_cast<size_t>(xAttr) >= d.attributeCount() || yAttr < 0 ||
        static_cast<size_t>(yAttr) >= d.attributeCount()) {
        throw Error("plot attribute index out of range");
    }
    const bool colored = !assignment.labels.empty();
    if (colored && assignment.size() != d.n()) {
        throw Error("assignment length must match dataset size");
    }

    const auto xa = static_cast<size_t>(xAttr);
    const auto ya = static_cast<size_t>(yAttr);
    const Axis xAxis = axisFor(d, xa);
    const Axis yAxis = axisFor(d, ya);
    const auto sx = [&](double v) {
        return kPlotLeft + (v - xAxis.lo) / (xAxis.hi - xAxis.lo) * (kPlotRight - kPlotLeft);
    };
    const auto sy = [&](double v) {
        return kPlotBottom - (v - yAxis.lo) / (yAxis.hi - yAxis.lo) * (kPlotBottom - kPlotTop);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"345\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
           escapeXml(d.schema[xa].name + " vs. " + d.schema[ya].name) + "</text>\n";

    // Axis lines.
    svg += "<line x1=\"" + fmt(kPlotLeft) + "\" y1=\"" + fmt(kPlotTop) + "\" x2=\"" +
           fmt(kPlotLeft) + "\" y2=\"" + fmt(kPlotBottom) + "\" stroke=\"#000000\"/>\n";
    svg += "<line x1=\"" + fmt(kPlotLeft) + "\" y1=\"" + fmt(kPlotBottom) + "\" x2=\"" +
           fmt(kPlotRight) + "\" y2=\"" + fmt(kPlotBottom) + "\" stroke=\"#000000\"/>\n";

    for (const Tick& tick : ticksFor(xAxis)) {
        const std::string x = fmt(sx(tick.pos));
        svg += "<line x1=\"" + x + "\" y1=\"" + fmt(kPlotBottom) + "\" x2=\"" + x + "\" y2=\"" +
               fmt(kPlotBottom + 5.0) + "\" stroke=\"#000000\"/>\n";
        svg += "<text x=\"" + x + "\" y=\"" + fmt(kPlotBottom + 18.0) +
               "\" text-anchor=\"middle\" font-size=\"10\">" + escapeXml(tick.label) +
               "</text>\n";
    }
    for (const Tick& tick : ticksFor(yAxis)) {
        const std::string y = fmt(sy(tick.pos));
        svg += "<line x1=\"" + fmt(kPlotLeft - 5.0) + "\" y1=\"" + y + "\" x2=\"" +
               fmt(kPlotLeft) + "\" y2=\"" + y + "\" stroke=\"#000000\"/>\n";
        svg += "<text x=\"" + fmt(kPlotLeft - 8.0) + "\" y=\"" + fmt(sy(tick.pos) + 4.0) +
               "\" text-anchor=\"end\" font-size=\"10\">" + escapeXml(tick.label) + "</text>\n";
    }

    // Axis titles.
    svg += "<text x=\"345\" y=\"585\" text-anchor=\"middle\">" +
           escapeXml(axisTitle(d.schema[xa])) + "</text>\n";
    svg += "<text x=\"20\" y=\"295\" text-anchor=\"middle\" transform=\"rotate(-90 20 295)\">" +
           escapeXml(axisTitle(d.schema[ya])) + "</text>\n";

    // One marker per instance, row order.
    for (size_t row = 0; row < d.n(); ++row) {
        const char* color = colored ? colorFor(assignment.labels[row]) : kPalette[0];
        svg += "<circle cx=\"" + fmt(sx(xAxis.valueAt(d, row, xa))) + "\" cy=\"" +
               fmt(sy(yAxis.valueAt(d, row, ya))) + "\" r=\"3\" fill=\"" + color +
               "\" fill-opacity=\"0.8\"/>\n";
    }

    if (colored) {
        double legendY = 60.0;
        const auto entry = [&](const std::string& label, const char* color) {
            svg += "<rect class=\"legend-swatch\" x=\"640\" y=\"" + fmt(legendY - 9.0) +
                   "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
            svg += "<text x=\"656\" y=\"" + fmt(legendY) + "\">" + escapeXml(label) +
                   "</text>\n";
            legendY += 18.0;
        };
        const size_t clusters = assignment.clusterCount();
        for (size_t c = 0; c < clusters; ++c) {
            const int label = static_cast<int>(c);
            if (assignment.countOf(label) == 0) continue;
            entry("Cluster " + std::to_string(c), colorFor(label));
        }
        if (assignment.countOf(ClusterAssignment::kNoise) > 0) entry("NOISE", kNoiseColor);
        if (assignment.countOf(ClusterAssignment::kUndefined) > 0) {
            entry("UNDEFINED", kUndefinedColor);
        }
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace steelclust
