#include "symrpr/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "symrpr/error.hpp"

namespace symrpr::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw Error(ErrorCode::ParseError, "bad number `" + std::string(text) + "`");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(sep, pos);
        out.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string pose_text(const GlidePose& p) {
    return format_number(p.psi) + "," + format_number(p.r) + "," + format_number(p.g);
}

GlidePose parse_pose(std::string_view text) {
    const auto v = parse_number_list(text, 3);
    return {v[0], v[1], v[2]};
}

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void CsvWriter::comment(std::string_view text) { os_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) os_ << (i ? "," : "") << names[i];
    os_ << '\n';
}

void CsvWriter::cell(double v, bool& first) {
    if (!first) os_ << ',';
    first = false;
    os_ << format_number(v);
}

void CsvWriter::cell(int v, bool& first) {
    if (!first) os_ << ',';
    first = false;
    os_ << v;
}

void CsvWriter::cell(std::size_t v, bool& first) {
    if (!first) os_ << ',';
    first = false;
    os_ << v;
}

void CsvWriter::cell(std::string_view v, bool& first) {
    if (!first) os_ << ',';
    first = false;
    os_ << v;
}

void CsvWriter::end_row() { os_ << '\n'; }

std::vector<double> parse_number_list(std::string_view text, std::size_t expected) {
    const auto parts = split(trim(text), ',');
    if (parts.size() != expected) {
        throw Error(ErrorCode::ParseError, "expected " + std::to_string(expected) + " comma-separated numbers, got `" +
                                               std::string(text) + "`");
    }
    std::vector<double> out;
    out.reserve(parts.size());
    for (auto p : parts) out.push_back(parse_number(p));
    return out;
}

void write_path_csv(std::ostream& os, const GeometryParams& geom, const JointPath& path) {
    CsvWriter csv(os);
    csv.comment("geom b=" + format_number(geom.b()) + " h=" + format_number(geom.h()) + " d=" + format_number(geom.d()));
    std::string crossings = "crossings";
    for (int arc : path.crossings) crossings += " " + std::to_string(arc);
    csv.comment(crossings);
    csv.comment("start " + pose_text(path.start));
    csv.comment("goal " + pose_text(path.goal));
    csv.comment("nu_star " + format_number(path.nu_star));
    csv.header({"nu", "delta2", "delta3"});
    for (const NuDelta& w : path.waypoints) csv.row(w.nu, w.delta2, w.delta3);
}

PathFile read_path_csv(std::istream& is) {
    PathFile out;
    std::string line;
    bool header_seen = false;
    int line_no = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::ParseError, "path line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            text = trim(text.substr(1));
            const auto space = text.find(' ');
            const std::string_view key = text.substr(0, space);
            const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(text.substr(space));
            try {
                if (key == "geom") {
                    double v[3] = {0.0, 0.0, 0.0};
                    bool seen[3] = {false, false, false};
                    for (auto item : split(rest, ' ')) {
                        item = trim(item);
                        if (item.empty()) continue;
                        const auto eq = item.find('=');
                        if (eq == std::string_view::npos) throw Error(ErrorCode::ParseError, "bad geometry item `" + std::string(item) + "`");
                        const auto name = item.substr(0, eq);
                        const int slot = name == "b" ? 0 : name == "h" ? 1 : name == "d" ? 2 : -1;
                        if (slot < 0) throw Error(ErrorCode::ParseError, "unknown geometry key `" + std::string(name) + "`");
                        v[slot] = parse_number(item.substr(eq + 1));
                        seen[slot] = true;
                    }
                    if (!(seen[0] && seen[1] && seen[2])) throw Error(ErrorCode::ParseError, "incomplete geometry comment");
                    out.geom = GeometryParams(v[0], v[1], v[2]);
                } else if (key == "crossings") {
                    out.path.crossings.clear();
                    for (auto item : split(rest, ' ')) {
                        item = trim(item);
                        if (item.empty()) continue;
                        const double arc = parse_number(item);
                        if (arc != 1.0 && arc != 2.0 && arc != 3.0) throw Error(ErrorCode::ParseError, "arc label must be 1, 2 or 3");
                        out.path.crossings.push_back(static_cast<int>(arc));
                    }
                } else if (key == "start") {
                    out.path.start = parse_pose(rest);
                } else if (key == "goal") {
                    out.path.goal = parse_pose(rest);
                } else if (key == "nu_star") {
                    out.path.nu_star = parse_number(rest);
                }
            } catch (const Error& e) {
                fail(e.what());
            }
            continue;
        }
        if (!header_seen) {
            if (text != "nu,delta2,delta3") fail("expected header `nu,delta2,delta3`");
            header_seen = true;
            continue;
        }
        try {
            const auto v = parse_number_list(text, 3);
            out.path.waypoints.push_back({v[0], v[1], v[2]});
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    if (!header_seen) throw Error(ErrorCode::ParseError, "path file has no `nu,delta2,delta3` header");
    if (out.path.waypoints.empty()) throw Error(ErrorCode::ParseError, "path file has no waypoints");
    return out;
}

void write_svg(std::ostream& os, const SvgDocument& doc) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    auto grow = [&](const PlanarPoint& p) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const auto& line : doc.lines) {
        for (const auto& p : line.points) grow(p);
    }
    for (const auto& m : doc.markers) grow(m.at);
    if (!(x0 <= x1)) {
        x0 = y0 = -1.0;
        x1 = y1 = 1.0;
    }
    const double w = std::max(x1 - x0, 1e-9);
    const double h = std::max(y1 - y0, 1e-9);
    x0 -= 0.05 * w;
    x1 += 0.05 * w;
    y0 -= 0.05 * h;
    y1 += 0.05 * h;
    const double extent = std::max(x1 - x0, y1 - y0);
    const std::string stroke = format_number(0.004 * extent);
    const std::string radius = format_number(0.01 * extent);

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\""
       << format_number(x0) << ' ' << format_number(y0) << ' ' << format_number(x1 - x0) << ' '
       << format_number(y1 - y0) << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
    os << "<title>" << doc.title << "</title>\n";
    for (const auto& note : doc.notes) os << "<desc>" << note << "</desc>\n";
    os << "<g transform=\"matrix(1 0 0 -1 0 " << format_number(y0 + y1) << ")\" fill=\"none\" stroke-width=\""
       << stroke << "\" stroke-linejoin=\"round\">\n";
    for (const auto& line : doc.lines) {
        os << "<polyline id=\"" << line.id << "\" stroke=\"" << line.color << "\" points=\"";
        for (std::size_t i = 0; i < line.points.size(); ++i) {
            os << (i ? " " : "") << format_number(line.points[i].x) << ',' << format_number(line.points[i].y);
        }
        os << "\"/>\n";
    }
    for (const auto& m : doc.markers) {
        os << "<circle cx=\"" << format_number(m.at.x) << "\" cy=\"" << format_number(m.at.y) << "\" r=\"" << radius
           << "\" fill=\"" << m.color << "\" stroke=\"none\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

}  // namespace symrpr::io
