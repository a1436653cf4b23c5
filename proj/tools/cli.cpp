#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "symrpr/dkp.hpp"
#include "symrpr/error.hpp"
#include "symrpr/geometry.hpp"
#include "symrpr/io.hpp"
#include "symrpr/modes.hpp"
#include "symrpr/planner.hpp"
#include "symrpr/singularity.hpp"

namespace symrpr::cli {

namespace {

namespace fs = std::filesystem;
using io::format_number;

constexpr const char* kBlue = "blue";
constexpr const char* kRed = "red";
constexpr const char* kGreen = "green";
constexpr const char* kBlack = "black";
constexpr const char* kPath = "#8000c0";

struct RunConfig {
    std::string geometry_path;
    double tol = kDefaultTol;
    std::string out_dir = ".";
    int samples = 720;

    std::string pose;
    std::string joint;
    std::string start;
    std::string goal;
    std::string path_file;
    double g_level = 0.0;
    double rho1_sq = 0.0;
    double nu = 0.0;
    double sweep_b = 1.0;
    std::string h_range = "0.2:2:10";
    std::string d_range = "0:1:10";
};

// Failure with a process exit code, raised by the subcommands.
struct Exit {
    int code;
    std::string message;
};

GeometryParams load_geometry(const RunConfig& cfg) {
    if (cfg.geometry_path.empty()) return GeometryParams::reference();
    return load_geometry_file(cfg.geometry_path);
}

GlidePose parse_pose(const std::string& text) {
    const auto v = io::parse_number_list(text, 3);
    return {v[0], v[1], v[2]};
}

GridRange parse_range(const std::string& text) {
    std::string range = text;
    std::replace(range.begin(), range.end(), ':', ',');
    const auto v = io::parse_number_list(range, 3);
    if (v[2] < 1.0 || v[2] != std::floor(v[2])) throw Error(ErrorCode::ParseError, "grid count must be a positive integer");
    return {v[0], v[1], static_cast<int>(v[2])};
}

SamplingOptions sampling(const RunConfig& cfg) {
    SamplingOptions opts;
    opts.samples = cfg.samples;
    return opts;
}

class Outputs {
public:
    explicit Outputs(const RunConfig& cfg, std::ostream& out) : dir_(cfg.out_dir), out_(out) {}

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        const fs::path file = dir_ / name;
        std::ofstream os(file, std::ios::binary);
        if (!os) throw Exit{1, "cannot write " + file.string()};
        body(os);
        os.flush();
        if (!os) throw Exit{1, "cannot write " + file.string()};
        out_ << "wrote " << file.string() << '\n';
    }

private:
    fs::path dir_;
    std::ostream& out_;
};

std::string piece_id(const Polyline& line, std::size_t piece) {
    return std::string(to_string(line.locus)) + "-" + std::to_string(piece);
}

const char* locus_color(Locus locus) {
    switch (locus) {
        case Locus::S2Slice:
        case Locus::Sigma2: return kRed;
        case Locus::Characteristic: return kGreen;
        default: return kBlue;
    }
}

void write_polylines_csv(std::ostream& os, const std::vector<Polyline>& lines, const std::vector<std::string>& comments,
                         const std::string& x_name, const std::string& y_name) {
    io::CsvWriter csv(os);
    for (const auto& c : comments) csv.comment(c);
    csv.header({"locus", "piece", "psi", x_name, y_name});
    std::map<Locus, std::size_t> pieces;
    for (const auto& line : lines) {
        const std::size_t piece = pieces[line.locus]++;
        for (const auto& p : line.points) csv.row(to_string(line.locus), piece, p.parameter, p.x, p.y);
    }
}

std::vector<io::SvgPolyline> polylines_svg(const std::vector<Polyline>& lines) {
    std::vector<io::SvgPolyline> out;
    std::map<Locus, std::size_t> pieces;
    for (const auto& line : lines) {
        io::SvgPolyline pl{piece_id(line, pieces[line.locus]++), locus_color(line.locus), {}};
        for (const auto& p : line.points) pl.points.push_back({p.x, p.y});
        out.push_back(std::move(pl));
    }
    return out;
}

int cmd_ik(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    const GlidePose pose = parse_pose(cfg.pose);
    const JointSquares j = leg_lengths_squared(geom, pose);
    const NuDelta nd = joint_to_nudelta(j);
    io::CsvWriter csv(out);
    csv.header({"rho1_sq", "rho2_sq", "rho3_sq", "nu", "delta2", "delta3"});
    csv.row(j.rho1_sq, j.rho2_sq, j.rho3_sq, nd.nu, nd.delta2, nd.delta3);
    return 0;
}

int cmd_dkp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const GeometryParams geom = load_geometry(cfg);
    const auto v = io::parse_number_list(cfg.joint, 3);
    const JointSquares joint{v[0], v[1], v[2]};
    if (!joint.valid()) throw Exit{1, "squared leg lengths must be non-negative"};
    const auto sols = solve_dkp(geom, joint, cfg.tol);
    if (sols.empty()) {
        err << "no real assembly mode\n";
        return 2;
    }
    out << sols.size() << " solutions\n";
    io::CsvWriter csv(out);
    csv.header({"psi", "r", "g", "multiplicity", "on_s1", "on_s2", "residual"});
    for (const auto& s : sols) {
        csv.row(s.pose.psi, s.pose.r, s.pose.g, s.multiplicity, s.on_s1() ? 1 : 0, s.on_s2 ? 1 : 0, s.residual);
    }
    return 0;
}

int cmd_cusps(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    auto cusps = cusp_points(geom);
    std::sort(cusps.begin(), cusps.end(), [](const CuspPoint& a, const CuspPoint& b) { return a.psi_cusp < b.psi_cusp; });

    auto table = [&](std::ostream& os) {
        io::CsvWriter csv(os);
        csv.header({"k", "psi", "r", "beta", "delta2", "delta3"});
        for (const auto& c : cusps) {
            const DeltaPair p = curve_C_at_angle(geom, c.psi_cusp);
            csv.row(c.k, c.psi_cusp, c.r_cusp, c.beta, p.delta2, p.delta3);
        }
    };
    table(out);
    Outputs files(cfg, out);
    files.write("cusps.csv", table);
    files.write("cusps.svg", [&](std::ostream& os) {
        io::SvgDocument doc;
        doc.title = "cusps of C";
        for (const auto& c : cusps) {
            const DeltaPair p = curve_C_at_angle(geom, c.psi_cusp);
            doc.markers.push_back({kBlack, {p.delta2, p.delta3}});
        }
        io::write_svg(os, doc);
    });
    return 0;
}

int cmd_curve_c(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    const Polyline curve = sample_curve_C(geom, sampling(cfg));
    Outputs files(cfg, out);
    files.write("curve_c.csv", [&](std::ostream& os) {
        io::CsvWriter csv(os);
        csv.header({"t", "psi", "delta2", "delta3"});
        for (const auto& p : curve.points) {
            const ExtendedReal t = ExtendedReal::from_psi(p.parameter);
            if (t.infinite) csv.row("inf", p.parameter, p.x, p.y);
            else csv.row(t.value, p.parameter, p.x, p.y);
        }
    });
    files.write("curve_c.svg", [&](std::ostream& os) {
        io::SvgDocument doc;
        doc.title = "curve C";
        doc.lines = polylines_svg({curve});
        for (const auto& c : cusp_points(geom)) {
            const DeltaPair p = curve_C_at_angle(geom, c.psi_cusp);
            doc.markers.push_back({kBlack, {p.delta2, p.delta3}});
        }
        io::write_svg(os, doc);
    });
    out << curve.points.size() << " samples\n";
    return 0;
}

int cmd_sigma_sections(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    if (!std::isfinite(cfg.g_level) || std::abs(cfg.g_level) <= cfg.tol) {
        throw Exit{1, "invalid level: g = " + format_number(cfg.g_level) + " lies on the g = 0 singular surface"};
    }
    const auto rows = characteristic_section(geom, cfg.samples);
    Outputs files(cfg, out);
    files.write("sigma_sections.csv", [&](std::ostream& os) {
        io::CsvWriter csv(os);
        csv.comment("g " + format_number(cfg.g_level));
        csv.header({"psi", "r_gamma", "r_minus", "r_plus"});
        for (const auto& r : rows) csv.row(r.psi, r.r_gamma, r.r_minus, r.r_plus);
    });
    files.write("sigma_sections.svg", [&](std::ostream& os) {
        io::SvgDocument doc;
        doc.title = "section g = " + format_number(cfg.g_level);
        io::SvgPolyline gamma{"Gamma", kBlue, {}}, lo{"Characteristic-minus", kGreen, {}},
            hi{"Characteristic-plus", kGreen, {}};
        for (const auto& r : rows) {
            gamma.points.push_back({r.psi, r.r_gamma});
            lo.points.push_back({r.psi, r.r_minus});
            hi.points.push_back({r.psi, r.r_plus});
        }
        doc.lines = {gamma, lo, hi};
        io::write_svg(os, doc);
    });
    return 0;
}

int cmd_slice(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    if (!std::isfinite(cfg.rho1_sq) || cfg.rho1_sq <= 0.0) {
        throw Exit{1, "invalid level: rho1^2 must be positive"};
    }
    const int cusps = count_cusps(geom, cfg.rho1_sq, cfg.tol);
    const auto lines = sample_rho1_slice(geom, cfg.rho1_sq, sampling(cfg));
    const std::string note = std::to_string(cusps) + (cusps == 1 ? " cusp" : " cusps");
    Outputs files(cfg, out);
    files.write("slice.csv", [&](std::ostream& os) {
        write_polylines_csv(os, lines, {"rho1_sq " + format_number(cfg.rho1_sq), note}, "rho2_sq", "rho3_sq");
    });
    files.write("slice.svg", [&](std::ostream& os) {
        io::SvgDocument doc;
        doc.title = "slice rho1^2 = " + format_number(cfg.rho1_sq);
        doc.notes = {note};
        doc.lines = polylines_svg(lines);
        for (const auto& c : cusp_points(geom)) {
            if (c.beta >= cfg.rho1_sq) continue;
            const DeltaPair p = curve_C_at_angle(geom, c.psi_cusp);
            doc.markers.push_back({kBlack, {cfg.rho1_sq + 4.0 * p.delta2, cfg.rho1_sq + 4.0 * p.delta3}});
        }
        io::write_svg(os, doc);
    });
    out << note << '\n';
    return 0;
}

int cmd_nu_section(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    if (!std::isfinite(cfg.nu) || cfg.nu <= 0.0) throw Exit{1, "invalid level: nu must be positive"};
    const auto lines = sample_nu_section(geom, cfg.nu, sampling(cfg));
    Outputs files(cfg, out);
    files.write("nu_section.csv", [&](std::ostream& os) {
        write_polylines_csv(os, lines, {"nu " + format_number(cfg.nu)}, "delta2", "delta3");
    });
    files.write("nu_section.svg", [&](std::ostream& os) {
        io::SvgDocument doc;
        doc.title = "section nu = " + format_number(cfg.nu);
        doc.lines = polylines_svg(lines);
        io::write_svg(os, doc);
    });
    return 0;
}

int cmd_label(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    const GlidePose pose = parse_pose(cfg.pose);
    const AspectId aspect = aspect_of(geom, pose, cfg.tol);
    const AssemblyLabel label = label_pose(geom, pose, cfg.tol);
    out << "label " << label.label << '\n';
    out << "aspect g_sign " << aspect.g_sign << " gamma_side " << aspect.gamma_side << '\n';
    return 0;
}

void write_report(std::ostream& os, const JointPath& path, const ValidationReport& report) {
    auto list = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
        return s.empty() ? std::string("none") : s;
    };
    std::vector<int> seen;
    for (const auto& ev : report.trace.crossings) seen.push_back(ev.arc);
    os << "status " << (report.pass ? "pass" : "fail") << '\n';
    if (!report.pass) os << "reason " << report.reason << '\n';
    os << "crossings " << list(seen) << '\n';
    os << "declared_crossings " << list(path.crossings) << '\n';
    os << "endpoint_error " << format_number(report.endpoint_error) << '\n';
    os << "nu_star " << format_number(path.nu_star) << '\n';
    os << "waypoints " << path.waypoints.size() << '\n';
    os << "continuation_steps " << report.trace.samples.size() << '\n';
    os << "min_abs_g " << format_number(report.trace.min_abs_g) << '\n';
    os << "min_abs_disc " << format_number(report.trace.min_abs_disc) << '\n';
    os << "min_gamma_distance " << format_number(report.trace.min_gamma_distance) << '\n';
}

int cmd_plan(const RunConfig& cfg, std::ostream& out) {
    const GeometryParams geom = load_geometry(cfg);
    const GlidePose start = parse_pose(cfg.start);
    const GlidePose goal = parse_pose(cfg.goal);
    JointPath path;
    try {
        path = plan(geom, start, goal);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DifferentAspects) {
            std::ostringstream msg;
            msg << "different aspects: start sign " << aspect_of(geom, start).global_sign() << ", goal sign "
                << aspect_of(geom, goal).global_sign();
            throw Exit{1, msg.str()};
        }
        throw;
    }
    const ValidationReport report = validate(geom, path, start, goal);
    const auto section = sample_nu_section(geom, path.nu_star, sampling(cfg));

    Outputs files(cfg, out);
    files.write("path.csv", [&](std::ostream& os) { io::write_path_csv(os, geom, path); });
    files.write("plan_section.csv", [&](std::ostream& os) {
        write_polylines_csv(os, section, {"nu " + format_number(path.nu_star)}, "delta2", "delta3");
    });
    files.write("plan.svg", [&](std::ostream& os) {
        io::SvgDocument doc;
        doc.title = "path at nu = " + format_number(path.nu_star);
        doc.lines = polylines_svg(section);
        io::SvgPolyline route{"path", kPath, {}};
        for (const auto& w : path.waypoints) {
            if (w.nu == path.nu_star) route.points.push_back({w.delta2, w.delta3});
        }
        if (route.points.empty()) route.points.push_back({path.waypoints.front().delta2, path.waypoints.front().delta3});
        doc.lines.push_back(route);
        io::write_svg(os, doc);
    });
    files.write("plan_report.txt", [&](std::ostream& os) { write_report(os, path, report); });
    write_report(out, path, report);
    return report.pass ? 0 : 1;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    std::ifstream in(cfg.path_file);
    if (!in) throw Exit{1, "cannot read " + cfg.path_file};
    const io::PathFile file = io::read_path_csv(in);
    GeometryParams geom = GeometryParams::reference();
    if (!cfg.geometry_path.empty()) geom = load_geometry(cfg);
    else if (file.geom) geom = *file.geom;
    const GlidePose start = cfg.start.empty() ? file.path.start : parse_pose(cfg.start);
    const GlidePose goal = cfg.goal.empty() ? file.path.goal : parse_pose(cfg.goal);
    const ValidationReport report = validate(geom, file.path, start, goal);
    write_report(out, file.path, report);
    return report.pass ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const GridRange hr = parse_range(cfg.h_range);
    const GridRange dr = parse_range(cfg.d_range);
    const auto cells = bifurcation_sweep(cfg.sweep_b, hr, dr);
    Outputs files(cfg, out);
    files.write("sweep.csv", [&](std::ostream& os) {
        io::CsvWriter csv(os);
        csv.comment("b " + format_number(cfg.sweep_b));
        csv.header({"h", "d", "beta1", "beta2", "beta3"});
        for (const auto& c : cells) csv.row(c.h, c.d, c.beta.beta1, c.beta.beta2, c.beta.beta3);
    });
    files.write("sweep.svg", [&](std::ostream& os) {
        io::SvgDocument doc;
        doc.title = "bifurcation values against d";
        const std::size_t per_row = static_cast<std::size_t>(dr.count);
        static const char* colors[3] = {kGreen, "#d0a000", kRed};
        for (std::size_t row = 0; row * per_row < cells.size(); ++row) {
            for (int i = 0; i < 3; ++i) {
                io::SvgPolyline pl{"beta" + std::to_string(i + 1) + "-h" + std::to_string(row), colors[i], {}};
                for (std::size_t k = 0; k < per_row; ++k) {
                    const auto& c = cells[row * per_row + k];
                    const double beta = i == 0 ? c.beta.beta1 : i == 1 ? c.beta.beta2 : c.beta.beta3;
                    pl.points.push_back({c.d, beta});
                }
                doc.lines.push_back(std::move(pl));
            }
        }
        io::write_svg(os, doc);
    });
    out << cells.size() << " rows\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kinematics, singularities and assembly-mode planning for symmetric 3-RPR manipulators"};
    app.name("symrpr");
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--geometry", cfg.geometry_path, "Geometry file with keys b, h, d (default b=1 h=1 d=0)");
    app.add_option("--tol", cfg.tol, "Tolerance for singular and boundary tests")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out_dir, "Output directory for CSV, SVG and report files");
    app.add_option("--samples", cfg.samples, "Parameter samples per curve")->check(CLI::Range(8, 1000000));

    std::function<int()> action;
    auto sub = [&](const char* name, const char* help, std::function<int()> fn) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&action, fn] { action = fn; });
        return s;
    };

    sub("ik", "Squared leg lengths and (nu, delta2, delta3) of a pose", [&] { return cmd_ik(cfg, out); })
        ->add_option("--pose", cfg.pose, "psi,r,g")
        ->required();
    sub("dkp", "All real assembly modes for squared leg lengths", [&] { return cmd_dkp(cfg, out, err); })
        ->add_option("--joint", cfg.joint, "rho1^2,rho2^2,rho3^2")
        ->required();
    sub("cusps", "Cusp angles and bifurcation values", [&] { return cmd_cusps(cfg, out); });
    sub("curve-c", "Sample the discriminant curve C", [&] { return cmd_curve_c(cfg, out); });
    sub("sigma-sections", "Jacobian and characteristic curves in a section g = const",
        [&] { return cmd_sigma_sections(cfg, out); })
        ->add_option("--g", cfg.g_level, "Section level")
        ->required();
    sub("slice", "Singular surfaces cut by rho1^2 = const", [&] { return cmd_slice(cfg, out); })
        ->add_option("--rho1sq", cfg.rho1_sq, "Slice level")
        ->required();
    sub("nu-section", "Singular surfaces cut by nu = const", [&] { return cmd_nu_section(cfg, out); })
        ->add_option("--nu", cfg.nu, "Section level")
        ->required();
    sub("label", "Aspect and assembly-mode label of a pose", [&] { return cmd_label(cfg, out); })
        ->add_option("--pose", cfg.pose, "psi,r,g")
        ->required();
    CLI::App* plan_cmd = sub("plan", "Plan and validate a joint-space path", [&] { return cmd_plan(cfg, out); });
    plan_cmd->add_option("--start", cfg.start, "psi,r,g")->required();
    plan_cmd->add_option("--goal", cfg.goal, "psi,r,g")->required();
    CLI::App* validate_cmd =
        sub("validate", "Validate a path file by continuation", [&] { return cmd_validate(cfg, out); });
    validate_cmd->add_option("--path", cfg.path_file, "Path CSV")->required();
    validate_cmd->add_option("--start", cfg.start, "psi,r,g (default: from the path file)");
    validate_cmd->add_option("--goal", cfg.goal, "psi,r,g (default: from the path file)");
    CLI::App* sweep_cmd = sub("sweep", "Bifurcation values over an (h, d) grid", [&] { return cmd_sweep(cfg, out); });
    sweep_cmd->set_help_flag("--help", "Print this help message and exit");
    sweep_cmd->add_option("--b", cfg.sweep_b, "Base length b");
    sweep_cmd->add_option("--h", cfg.h_range, "lo:hi:count");
    sweep_cmd->add_option("--d", cfg.d_range, "lo:hi:count");

    std::vector<const char*> argv{"symrpr"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        return action();
    } catch (const Exit& e) {
        err << "error: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace symrpr::cli
