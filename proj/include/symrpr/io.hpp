#pragma once

// Text formats: CSV tables, joint-path files and SVG overlays. Numbers are
// always written with 9 significant digits so that output is reproducible
// byte for byte.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symrpr/geometry.hpp"
#include "symrpr/planner.hpp"

namespace symrpr::io {

// printf("%.9g"), with negative zero written as 0.
std::string format_number(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(std::string_view text);
    void header(const std::vector<std::string>& names);

    template <class... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        (cell(cells, first), ...);
        end_row();
    }

private:
    void cell(double v, bool& first);
    void cell(int v, bool& first);
    void cell(std::size_t v, bool& first);
    void cell(std::string_view v, bool& first);
    void cell(const char* v, bool& first) { cell(std::string_view(v), first); }
    void cell(const std::string& v, bool& first) { cell(std::string_view(v), first); }
    void end_row();

    std::ostream& os_;
};

// Comma-separated numbers such as "0.785398,1.1,0.4". Throws Error(ParseError).
std::vector<double> parse_number_list(std::string_view text, std::size_t expected);

// Header comments (# geom, # crossings, # start, # goal, # nu_star), then the
// nu,delta2,delta3 table.
void write_path_csv(std::ostream& os, const GeometryParams& geom, const JointPath& path);

struct PathFile {
    std::optional<GeometryParams> geom;
    JointPath path;
};

// Unknown comment lines are ignored. Throws Error(ParseError).
PathFile read_path_csv(std::istream& is);

struct SvgPolyline {
    std::string id;
    std::string color;
    std::vector<PlanarPoint> points;
};

struct SvgMarker {
    std::string color;
    PlanarPoint at;
};

struct SvgDocument {
    std::string title;
    std::vector<std::string> notes;
    std::vector<SvgPolyline> lines;
    std::vector<SvgMarker> markers;
};

// SVG 1.1 with the viewBox fitted to the data plus 5% padding. Coordinates
// are written unchanged; a y-flip group puts the y axis upward.
void write_svg(std::ostream& os, const SvgDocument& doc);

}  // namespace symrpr::io
