#include "doctest.h"

#include <cmath>

#include "squid/plot.hpp"

using namespace squid;

namespace {

CsvTable table_with_three_cutoffs()
{
    std::vector<SweepRecord> records;
    for (double xi : {0.0, 0.05, 0.1})
        for (double flux : {0.0, 0.25, 0.5}) {
            SweepRecord r;
            r.flux_fraction = flux;
            r.xi = xi;
            r.purity_first = 1.0 - 0.5 * flux;
            r.purity_second = 1.0 - 0.6 * flux;
            r.current_first = 2e-6 * (0.5 - flux);
            r.current_second = 1.8e-6 * (0.5 - flux);
            r.zeta_star = 0.9 - flux * 0.1;
            r.n = 40;
            records.push_back(r);
        }
    return parse_csv(records_to_csv(records));
}

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("figure names")
{
    CHECK(parse_figure("fig2") == Figure::fig2);
    CHECK_FALSE(parse_figure("fig4").has_value());
    CHECK(to_string(Figure::fig3) == "fig3");
}

TEST_CASE("one curve per order and cutoff")
{
    const auto table = table_with_three_cutoffs();
    const auto fig1 = figure_spec(Figure::fig1, table);
    CHECK(fig1.series.size() == 6);
    CHECK(fig1.series[0].label == "1st order, Ω=∞");
    CHECK(fig1.series[1].dashed);
    CHECK(fig1.series[5].label == "2nd order, Ω=10ω₀");

    const auto fig2 = figure_spec(Figure::fig2, table);
    CHECK(fig2.series.size() == 6); // zeta* and the 1 - xi reference per cutoff
    CHECK(fig2.series[5].y.front() == doctest::Approx(0.9));

    const auto fig3 = figure_spec(Figure::fig3, table);
    CHECK(fig3.y_label == "⟨Φ/L⟩ (μA)");
    CHECK(fig3.series[0].y.front() == doctest::Approx(1.0));
}

TEST_CASE("SVG output")
{
    const auto svg = render_svg(figure_spec(Figure::fig1, table_with_three_cutoffs()));
    CHECK(svg.find("<svg xmlns") != std::string::npos);
    CHECK(count(svg, "class=\"series\"") == 6);
    CHECK(svg.find("data-label=\"1st order, Ω=20ω₀\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("unusable tables")
{
    CsvTable partial;
    partial.columns = {"flux_fraction", "purity_first"};
    partial.rows = {{0.1, 0.9}};
    try {
        figure_spec(Figure::fig1, partial);
        FAIL("expected PlotError");
    } catch (const PlotError& e) {
        CHECK(e.missing() == std::vector<std::string>{"xi", "purity_second"});
    }
    CsvTable empty = table_with_three_cutoffs();
    empty.rows.clear();
    CHECK_THROWS_AS(figure_spec(Figure::fig3, empty), PlotError);
    CsvTable all_nan = table_with_three_cutoffs();
    for (auto& row : all_nan.rows)
        for (std::size_t c = 2; c < row.size(); ++c) row[c] = std::nan("");
    CHECK_THROWS_AS(figure_spec(Figure::fig1, all_nan), PlotError);
}

TEST_CASE("tick placement")
{
    const auto t = nice_ticks(0.0, 1.0, 5);
    REQUIRE(t.size() >= 3);
    CHECK(t.front() >= -1e-12);
    CHECK(t.back() <= 1.0 + 1e-12);
    CHECK(t[1] - t[0] == doctest::Approx(0.2));
}
