#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctb/experiment.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("ctb_test_" + name);
    fs::remove_all(dir);
    return dir;
}

TEST(Config, ParsesKeyValueTextWithComments) {
    const auto s = ctb::parse_config_text("# sample\nproblem = traveling\nn_cells=36\n\n  dt = 0.001  # step\n");
    EXPECT_EQ(s.at("problem"), "traveling");
    EXPECT_EQ(s.at("n-cells"), "36");
    EXPECT_EQ(s.at("dt"), "0.001");
    EXPECT_THROW(ctb::parse_config_text("lambda\n"), ctb::ConfigError);
}

TEST(Config, FlagsOverrideFile) {
    const auto file = ctb::parse_config_text("lambda=0.1\nn-cells=20\n");
    const auto merged = ctb::merge_settings(file, {{"lambda", "0.01"}});
    const auto c = ctb::config_from_settings(merged);
    EXPECT_EQ(c.lambda, 0.01);
    EXPECT_EQ(c.n_cells, 20);
}

TEST(Config, ListsAndOutputs) {
    const auto c = ctb::config_from_settings(
        {{"sample-times", "0.4, 0.6"}, {"sample-xs", "all-knots"}, {"outputs", "table,csv,plotdata"}});
    EXPECT_EQ(c.sample_times, (std::vector<double>{0.4, 0.6}));
    EXPECT_TRUE(c.sample_xs.empty());
    EXPECT_EQ(c.outputs.size(), 3u);
}

std::string failing_field(const ctb::Settings& s) {
    try {
        ctb::validate(ctb::config_from_settings(s));
    } catch (const ctb::ConfigError& e) {
        return e.field();
    }
    return {};
}

TEST(Config, ValidationNamesTheField) {
    EXPECT_EQ(failing_field({{"lambda", "0"}}), "lambda");
    EXPECT_EQ(failing_field({{"dt", "-1"}}), "dt");
    EXPECT_EQ(failing_field({{"n-cells", "2"}}), "n-cells");
    EXPECT_EQ(failing_field({{"t-end", "-0.5"}}), "t-end");
    EXPECT_EQ(failing_field({{"t-end", "0.1"}, {"dt", "0.03"}}), "t-end");
    EXPECT_EQ(failing_field({{"t-end", "0.1"}, {"sample-times", "0.2"}}), "sample-times");
    EXPECT_EQ(failing_field({{"sample-xs", "0.3333"}}), "sample-xs");
    EXPECT_EQ(failing_field({{"problem", "wave"}}), "problem");
    EXPECT_EQ(failing_field({{"lambda", "abc"}}), "lambda");
    EXPECT_EQ(failing_field({{"colour", "red"}}), "colour");
    EXPECT_EQ(failing_field({{"problem", "traveling"}, {"alpha", "0.1"}}), "boundary_left");
    EXPECT_EQ(failing_field({}), "");
}

TEST(Run, InitialConditionTable) {
    ctb::RunConfig c;
    c.sample_xs = {0.25, 0.5};
    std::ostringstream out, err;
    ASSERT_EQ(ctb::run(c, out, err), ctb::ExitCode::kOk) << err.str();
    const auto rows = ctb::parse_table(out.str());
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(rows[1].present, 1.0, 1e-5);
    EXPECT_NEAR(rows[1].exact, 1.0, 1e-5);
}

TEST(Run, BadConfigExitsWithOne) {
    ctb::RunConfig c;
    c.dt = 0.0;
    std::ostringstream out, err;
    EXPECT_EQ(ctb::run(c, out, err), ctb::ExitCode::kConfig);
    EXPECT_NE(err.str().find("dt"), std::string::npos);
    EXPECT_TRUE(out.str().empty());
}

TEST(Run, WritesCsvAndPlotData) {
    const auto dir = scratch("csv");
    ctb::RunConfig c;
    c.problem = ctb::ProblemKind::kTraveling;
    c.lambda = 0.01;
    c.n_cells = 36;
    c.dt = 1e-3;
    c.t_end = 0.2;
    c.sample_times = {0.1, 0.2};
    c.outputs = {ctb::Output::kCsv, ctb::Output::kPlotData};
    c.output_dir = dir.string();
    std::ostringstream out, err;
    ASSERT_EQ(ctb::run(c, out, err), ctb::ExitCode::kOk) << err.str();
    EXPECT_TRUE(out.str().empty());

    const auto csv = slurp(dir / "traveling_t0.1.csv");
    EXPECT_EQ(csv.rfind("x,t,numerical,exact,abs_error\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 38);
    EXPECT_TRUE(fs::exists(dir / "traveling_t0.2.csv"));
    const auto plot = slurp(dir / "traveling_plotdata.csv");
    EXPECT_EQ(std::count(plot.begin(), plot.end(), '\n'), 1 + 2 * 37);
    fs::remove_all(dir);
}

TEST(Run, DeterministicBytes) {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    ctb::RunConfig c;
    c.lambda = 0.1;
    c.t_end = 0.05;
    c.outputs = {ctb::Output::kCsv};
    std::ostringstream out, err;
    c.output_dir = a.string();
    ASSERT_EQ(ctb::run(c, out, err), ctb::ExitCode::kOk);
    c.output_dir = b.string();
    ASSERT_EQ(ctb::run(c, out, err), ctb::ExitCode::kOk);
    const auto ca = slurp(a / "sine_t0.05.csv");
    EXPECT_FALSE(ca.empty());
    EXPECT_EQ(ca, slurp(b / "sine_t0.05.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Reproduce, TargetNames) {
    EXPECT_EQ(ctb::parse_target("table2"), ctb::Target::kTable2);
    EXPECT_EQ(ctb::parse_target("fig8"), ctb::Target::kFig8);
    EXPECT_FALSE(ctb::parse_target("table9").has_value());
}

TEST(Reproduce, Table2) {
    const auto r = ctb::reproduce(ctb::Target::kTable2);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.cells.size(), 15u);
}

TEST(Reproduce, Table4FlagsMisprintedExactCell) {
    const auto r = ctb::reproduce(ctb::Target::kTable4);
    EXPECT_TRUE(r.pass);
    int noted = 0;
    for (const auto& c : r.cells) {
        if (!c.note.empty()) {
            ++noted;
            EXPECT_EQ(c.x, 0.25);
            EXPECT_EQ(c.t, 0.6);
            EXPECT_NE(c.note.find("0.22896"), std::string::npos);
            EXPECT_NEAR(c.exact, 0.26896484531662, 1e-11);
        }
    }
    EXPECT_EQ(noted, 1);
}

TEST(Reproduce, Table5ReportsPassingStep) {
    const auto r = ctb::reproduce(ctb::Target::kTable5);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.cells.size(), 19u);
    EXPECT_EQ(r.notes.back(), "passing dt = 0.01");
    std::ostringstream os;
    ctb::print_reproduction(r, os);
    EXPECT_NE(os.str().find("result table5: PASS"), std::string::npos);
}

TEST(Reproduce, WritesArtifact) {
    const auto dir = scratch("repro");
    std::ostringstream out, err;
    EXPECT_EQ(ctb::run_reproduction(ctb::Target::kFig7, dir.string(), out, err), ctb::ExitCode::kOk);
    EXPECT_TRUE(fs::exists(dir / "fig7.csv"));
    fs::remove_all(dir);
}

}  // namespace
