#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "chiroptica/plot.hpp"

using namespace chiroptica;

namespace {

PlotSeries make_series(std::string label, std::vector<double> x, std::vector<double> y,
                       SeriesKind kind = SeriesKind::Rotation) {
    PlotSeries s;
    s.label = std::move(label);
    s.x = std::move(x);
    s.y = std::move(y);
    s.kind = kind;
    return s;
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = text.find(needle);
    while (pos != std::string::npos) {
        ++count;
        pos = text.find(needle, pos + needle.size());
    }
    return count;
}

} // namespace

TEST_CASE("the CSV table merges x values and leaves gaps blank") {
    const std::vector<PlotSeries> series = {make_series("A", {0.25, 0.5, 1.0}, {1.0, 2.0, 4.0}),
                                            make_series("B", {0.5, 0.75}, {5.0, 7.5})};
    const std::string csv = emit_plot_csv(series);
    CHECK_THAT(csv, Catch::Matchers::StartsWith("concentration,A,B\n"));
    CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("\n0.25,1,\n"));
    CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("\n0.5,2,5\n"));
    CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("\n0.75,,7.5\n"));
    CHECK_THAT(csv, Catch::Matchers::ContainsSubstring("\n1,4,\n"));

    // five lines: header plus one row per distinct x
    CHECK(count_occurrences(csv, "\n") == 5);
}

TEST_CASE("CSV values survive a parse round trip") {
    const double value = 0.1234567890123456789;
    const std::vector<PlotSeries> series = {make_series("A", {value}, {3.0 * value})};
    const std::string csv = emit_plot_csv(series);
    const std::size_t line_start = csv.find('\n') + 1;
    const std::size_t comma = csv.find(',', line_start);
    const double x = std::stod(csv.substr(line_start, comma - line_start));
    const double y = std::stod(csv.substr(comma + 1));
    CHECK(x == value);
    CHECK(y == 3.0 * value);
}

TEST_CASE("the SVG is a complete standalone picture") {
    const std::vector<PlotSeries> series = {make_series("A", {0.25, 0.5, 1.0}, {1.0, 2.0, 4.0}),
                                            make_series("B", {0.5, 0.75}, {5.0, 7.5})};
    const std::string svg = emit_plot_svg(series, {});
    CHECK_THAT(svg, Catch::Matchers::StartsWith("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    CHECK_THAT(svg, Catch::Matchers::EndsWith("</svg>\n"));
    CHECK(count_occurrences(svg, "<polyline") == 2);
    CHECK(count_occurrences(svg, "<circle") == 5);
    CHECK_THAT(svg, Catch::Matchers::ContainsSubstring(">A</text>"));
    CHECK_THAT(svg, Catch::Matchers::ContainsSubstring(">B</text>"));
    // the first two palette entries are distinct
    CHECK_THAT(svg, Catch::Matchers::ContainsSubstring("#1f77b4"));
    CHECK_THAT(svg, Catch::Matchers::ContainsSubstring("#d62728"));
}

TEST_CASE("a single point draws one marker and no line") {
    const std::vector<PlotSeries> series = {make_series("Solo", {0.5}, {1.0})};
    const std::string svg = emit_plot_svg(series, {});
    CHECK(count_occurrences(svg, "<circle") == 1);
    CHECK(count_occurrences(svg, "<polyline") == 0);
}

TEST_CASE("labels and titles are XML escaped") {
    PlotOptions options;
    options.title = "rotation <raw> & more";
    const std::vector<PlotSeries> series = {make_series("A<B>&\"C\"", {0.5, 1.0}, {1.0, 2.0})};
    const std::string svg = emit_plot_svg(series, options);
    CHECK_THAT(svg, Catch::Matchers::ContainsSubstring("rotation &lt;raw&gt; &amp; more"));
    CHECK_THAT(svg, Catch::Matchers::ContainsSubstring("A&lt;B&gt;&amp;&quot;C&quot;"));
    CHECK(svg.find("<raw>") == std::string::npos);
}

TEST_CASE("plot emission is deterministic") {
    const std::vector<PlotSeries> series = {make_series("A", {0.25, 0.5, 1.0}, {1.0, 2.0, 4.0})};
    CHECK(emit_plot(series, PlotFormat::Svg) == emit_plot(series, PlotFormat::Svg));
    CHECK(emit_plot(series, PlotFormat::Csv) == emit_plot(series, PlotFormat::Csv));
}

TEST_CASE("flat or single-valued data still produces a usable viewport") {
    const std::vector<PlotSeries> series = {make_series("Flat", {0.5, 1.0, 1.5}, {2.0, 2.0, 2.0})};
    const std::string svg = emit_plot_svg(series, {});
    CHECK(count_occurrences(svg, "<circle") == 3);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("plot emission rejects malformed input") {
    const std::vector<PlotSeries> none;
    CHECK_THROWS_AS(emit_plot_svg(none, {}), std::invalid_argument);
    CHECK_THROWS_AS(emit_plot_csv(none), std::invalid_argument);

    const std::vector<PlotSeries> empty_series = {make_series("E", {}, {})};
    CHECK_THROWS_AS(emit_plot_svg(empty_series, {}), std::invalid_argument);

    const std::vector<PlotSeries> mismatched = {make_series("M", {0.5, 1.0}, {1.0})};
    CHECK_THROWS_AS(emit_plot_csv(mismatched), std::invalid_argument);

    PlotOptions tiny;
    tiny.width = 100;
    const std::vector<PlotSeries> ok = {make_series("A", {0.5, 1.0}, {1.0, 2.0})};
    CHECK_THROWS_AS(emit_plot_svg(ok, tiny), std::invalid_argument);
}
