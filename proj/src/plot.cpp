#include "squid/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace squid {

std::optional<Figure> parse_figure(const std::string& name)
{
    if (name == "fig1") return Figure::fig1;
    if (name == "fig2") return Figure::fig2;
    if (name == "fig3") return Figure::fig3;
    return std::nullopt;
}

std::string to_string(Figure figure)
{
    switch (figure) {
    case Figure::fig1: return "fig1";
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    }
    return "unknown";
}

std::vector<std::string> required_columns(Figure figure)
{
    switch (figure) {
    case Figure::fig1: return {"flux_fraction", "xi", "purity_first", "purity_second"};
    case Figure::fig2: return {"flux_fraction", "xi", "zeta_star"};
    case Figure::fig3: return {"flux_fraction", "xi", "current_first_A", "current_second_A"};
    }
    return {};
}

namespace {

std::string fmt(const char* pattern, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string cutoff_label(double xi)
{
    if (xi == 0.0) return "Ω=∞";
    return "Ω=" + fmt("%.4g", 1.0 / xi) + "ω₀";
}

std::string escape(const std::string& s)
{
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

PlotSpec figure_spec(Figure figure, const CsvTable& table)
{
    std::vector<std::string> missing;
    for (const auto& c : required_columns(figure))
        if (!table.has(c)) missing.push_back(c);
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw PlotError("missing required columns: " + list, missing);
    }
    if (table.rows.empty()) throw PlotError("results table has no rows", {});

    const auto flux = table.column("flux_fraction");
    const auto xi = table.column("xi");
    std::map<double, std::vector<std::size_t>> by_cutoff; // keyed by xi, ascending
    for (std::size_t k = 0; k < xi.size(); ++k)
        if (std::isfinite(xi[k]) && std::isfinite(flux[k])) by_cutoff[xi[k]].push_back(k);

    PlotSpec spec;
    spec.x_label = "Φx / Φ₀";
    auto add = [&](const std::vector<double>& y, double scale, const std::string& label, bool dashed,
                   const std::vector<std::size_t>& rows) {
        Series s;
        s.label = label;
        s.dashed = dashed;
        for (const auto k : rows)
            if (std::isfinite(y[k])) {
                s.x.push_back(flux[k]);
                s.y.push_back(y[k] * scale);
            }
        if (!s.x.empty()) spec.series.push_back(std::move(s));
    };

    switch (figure) {
    case Figure::fig1: {
        spec.title = "Steady-state purity";
        spec.y_label = "Tr ρ²";
        const auto p1 = table.column("purity_first");
        const auto p2 = table.column("purity_second");
        for (const auto& [x, rows] : by_cutoff) {
            add(p1, 1.0, "1st order, " + cutoff_label(x), false, rows);
            add(p2, 1.0, "2nd order, " + cutoff_label(x), true, rows);
        }
        break;
    }
    case Figure::fig2: {
        spec.title = "Optimal weighting ζ*";
        spec.y_label = "ζ";
        const auto z = table.column("zeta_star");
        for (const auto& [x, rows] : by_cutoff) {
            const auto before = spec.series.size();
            add(z, 1.0, "ζ*, " + cutoff_label(x), false, rows);
            if (spec.series.size() == before) continue;
            Series ref;
            ref.label = "1−ξ, " + cutoff_label(x);
            ref.dashed = true;
            for (const auto k : rows) {
                ref.x.push_back(flux[k]);
                ref.y.push_back(1.0 - x);
            }
            spec.series.push_back(std::move(ref));
        }
        break;
    }
    case Figure::fig3: {
        spec.title = "Screening current";
        spec.y_label = "⟨Φ/L⟩ (μA)";
        const auto i1 = table.column("current_first_A");
        const auto i2 = table.column("current_second_A");
        for (const auto& [x, rows] : by_cutoff) {
            add(i1, 1e6, "1st order, " + cutoff_label(x), false, rows);
            add(i2, 1e6, "2nd order, " + cutoff_label(x), true, rows);
        }
        break;
    }
    }
    if (spec.series.empty()) throw PlotError("results table has no finite values for " + to_string(figure), {});
    return spec;
}

std::vector<double> nice_ticks(double lo, double hi, int target)
{
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / std::max(target, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (const double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + 1e-9 * step; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

std::string render_svg(const PlotSpec& spec)
{
    const double width = 760, height = 500;
    const double left = 80, right = 230, top = 50, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : spec.series)
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, s.y[k]);
            ymax = std::max(ymax, s.y[k]);
        }
    const auto xt = nice_ticks(xmin, xmax);
    const auto yt = nice_ticks(ymin, ymax);
    xmin = std::min(xmin, xt.front());
    xmax = std::max(xmax, xt.back());
    ymin = std::min(ymin, yt.front());
    ymax = std::max(ymax, yt.back());
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", width) + "\" height=\"" +
           fmt("%.0f", height) + "\" viewBox=\"0 0 " + fmt("%.0f", width) + " " + fmt("%.0f", height) +
           "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", left + pw / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
           escape(spec.title) + "</text>\n";
    svg += "<rect x=\"" + fmt("%.1f", left) + "\" y=\"" + fmt("%.1f", top) + "\" width=\"" + fmt("%.1f", pw) +
           "\" height=\"" + fmt("%.1f", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    for (const double t : xt) {
        const double x = px(t);
        svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", top + ph) + "\" x2=\"" + fmt("%.2f", x) +
               "\" y2=\"" + fmt("%.2f", top + ph + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", top + ph + 20) +
               "\" text-anchor=\"middle\">" + fmt("%.3g", t) + "</text>\n";
    }
    for (const double t : yt) {
        const double y = py(t);
        svg += "<line x1=\"" + fmt("%.2f", left - 5) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" + fmt("%.2f", left) +
               "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", left - 8) + "\" y=\"" + fmt("%.2f", y + 4) + "\" text-anchor=\"end\">" +
               fmt("%.3g", t) + "</text>\n";
    }
    svg += "<text x=\"" + fmt("%.1f", left + pw / 2) + "\" y=\"" + fmt("%.1f", height - 15) +
           "\" text-anchor=\"middle\">" + escape(spec.x_label) + "</text>\n";
    svg += "<text transform=\"translate(20," + fmt("%.1f", top + ph / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + escape(spec.y_label) + "</text>\n";

    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& s = spec.series[k];
        const std::string color = palette[(k / 2) % 7];
        std::string points;
        for (std::size_t j = 0; j < s.x.size(); ++j)
            points += (j ? " " : "") + fmt("%.2f", px(s.x[j])) + "," + fmt("%.2f", py(s.y[j]));
        svg += "<polyline class=\"series\" data-label=\"" + escape(s.label) + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.8\"" + (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"" + points +
               "\"/>\n";
        const double ly = top + 14 + 20.0 * static_cast<double>(k);
        const double lx = left + pw + 15;
        svg += "<line x1=\"" + fmt("%.1f", lx) + "\" y1=\"" + fmt("%.1f", ly) + "\" x2=\"" + fmt("%.1f", lx + 28) +
               "\" y2=\"" + fmt("%.1f", ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.8\"" +
               (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
        svg += "<text x=\"" + fmt("%.1f", lx + 34) + "\" y=\"" + fmt("%.1f", ly + 4) + "\">" + escape(s.label) +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace squid
