#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("symrpr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(std::vector<std::string> args) {
        args.insert(args.begin(), {"--out", dir_.string()});
        std::ostringstream out, err;
        Outcome r;
        r.code = symrpr::cli::run(args, out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    std::string slurp(const std::string& name) const {
        std::ifstream is(dir_ / name);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_F(Cli, Ik) {
    const Outcome r = run({"ik", "--pose", "0.785398163,1.1,0.4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "5.48,")) << r.out;
    EXPECT_TRUE(contains(r.out, "7.99492")) << r.out;
}

TEST_F(Cli, Dkp) {
    const Outcome two = run({"dkp", "--joint", "5.48,1.257461,1.257461"});
    EXPECT_EQ(two.code, 0);
    EXPECT_TRUE(contains(two.out, "2 solutions")) << two.out;
    const Outcome none = run({"dkp", "--joint", "0,4,4"});
    EXPECT_EQ(none.code, 2);
    EXPECT_TRUE(contains(none.err, "no real assembly mode"));
}

TEST_F(Cli, MalformedInput) {
    EXPECT_EQ(run({"ik", "--pose", "1,2"}).code, 1);
    EXPECT_EQ(run({"ik", "--pose", "a,b,c"}).code, 1);
    EXPECT_EQ(run({"nonsense"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, Cusps) {
    const Outcome r = run({"cusps"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "0.125"));
    EXPECT_TRUE(contains(r.out, "-1.30899694"));  // -5 pi / 12
    EXPECT_TRUE(fs::exists(dir_ / "cusps.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "cusps.svg"));
}

TEST_F(Cli, SliceAndSections) {
    const Outcome slice = run({"slice", "--rho1sq", "4"});
    EXPECT_EQ(slice.code, 0);
    EXPECT_TRUE(contains(slice.out, "3 cusps"));
    EXPECT_TRUE(contains(slurp("slice.csv"), "3 cusps"));
    EXPECT_EQ(run({"slice", "--rho1sq", "2"}).code, 1);
    EXPECT_EQ(run({"sigma-sections", "--g", "0"}).code, 1);
    EXPECT_EQ(run({"sigma-sections", "--g", "0.5"}).code, 0);
    EXPECT_EQ(run({"nu-section", "--nu", "8"}).code, 0);
    const std::string svg = slurp("nu_section.svg");
    EXPECT_TRUE(contains(svg, "<svg"));
    EXPECT_TRUE(contains(svg, "viewBox"));
}

TEST_F(Cli, Sweep) {
    const Outcome r = run({"sweep", "--b", "1", "--h", "0.2:2:10", "--d", "0:1:10"});
    EXPECT_EQ(r.code, 0);
    std::istringstream csv(slurp("sweep.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'h') continue;
        ++rows;
        std::vector<double> v;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        ASSERT_EQ(v.size(), 5u);
        EXPECT_LE(v[2], v[3]);
        EXPECT_LE(v[3], v[4]);
    }
    EXPECT_EQ(rows, 100);
}

TEST_F(Cli, SvgPointsComeFromCsv) {
    ASSERT_EQ(run({"curve-c"}).code, 0);
    std::set<std::string> csv_points;
    std::istringstream csv(slurp("curve_c.csv"));
    std::string line;
    std::getline(csv, line);
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        const auto second = line.find(',', line.find(',') + 1);
        csv_points.insert(line.substr(second + 1));
    }
    const std::string svg = slurp("curve_c.svg");
    const auto start = svg.find("points=\"");
    ASSERT_NE(start, std::string::npos);
    const auto stop = svg.find('"', start + 8);
    std::istringstream pts(svg.substr(start + 8, stop - start - 8));
    std::string pt;
    int count = 0;
    while (pts >> pt) {
        EXPECT_TRUE(csv_points.count(pt)) << pt;
        ++count;
    }
    EXPECT_EQ(count, rows);
}

TEST_F(Cli, Label) {
    const Outcome r = run({"label", "--pose", "0.785398163,0.176777,1.0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "label 1")) << r.out;
}

TEST_F(Cli, PlanAndValidate) {
    const Outcome diff = run({"plan", "--start=0.785398163,1.1,-0.4", "--goal", "0.785398163,1.1,0.4"});
    EXPECT_EQ(diff.code, 1);
    EXPECT_TRUE(contains(diff.err, "different aspects"));

    const Outcome same = run({"plan", "--start", "0.785398163,1.1,0.4", "--goal", "0.785398163,1.1,0.4"});
    EXPECT_EQ(same.code, 0);
    EXPECT_TRUE(contains(same.out, "crossings none")) << same.out;

    const Outcome ok = run({"plan", "--start", "0.785398163,0.176777,1.0", "--goal=0.785398163,1.1,-0.4"});
    EXPECT_EQ(ok.code, 0) << ok.err;
    EXPECT_TRUE(contains(ok.out, "status pass")) << ok.out;
    EXPECT_TRUE(contains(ok.out, "crossings 1")) << ok.out;
    for (const char* f : {"path.csv", "plan_section.csv", "plan.svg", "plan_report.txt"}) {
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    }

    const Outcome val = run({"validate", "--path", (dir_ / "path.csv").string()});
    EXPECT_EQ(val.code, 0) << val.out << val.err;
    const Outcome wrong = run({"validate", "--path", (dir_ / "path.csv").string(), "--goal=0.785398163,1.1,0.4"});
    EXPECT_EQ(wrong.code, 1);
}
