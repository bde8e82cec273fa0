// plot.hpp — Self-contained SVG line plots of sweep tables

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "squid/io.hpp"

namespace squid {

enum class Figure { fig1, fig2, fig3 };

std::optional<Figure> parse_figure(const std::string& name);
std::string to_string(Figure figure);

// Raised when a table cannot produce the figure; missing() lists absent columns
// and is empty when the table simply has no plottable data.
class PlotError : public std::runtime_error {
public:
    PlotError(const std::string& what, std::vector<std::string> missing)
        : std::runtime_error(what), missing_(std::move(missing)) {}
    const std::vector<std::string>& missing() const noexcept { return missing_; }

private:
    std::vector<std::string> missing_;
};

std::vector<std::string> required_columns(Figure figure);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed{false};
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

// One curve per (order, cutoff) present in the table; fig2 adds the 1 - xi
// reference per cutoff and fig3 plots currents in microamperes.
PlotSpec figure_spec(Figure figure, const CsvTable& table);

std::string render_svg(const PlotSpec& spec);

// Tick positions covering [lo, hi] at 1/2/5 x 10^k spacing.
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

} // namespace squid
