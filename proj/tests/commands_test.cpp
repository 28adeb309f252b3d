#include <pairedfd/commands.hpp>
#include <pairedfd/error.hpp>
#include <pairedfd/manifest.hpp>
#include <pairedfd/paired_csv.hpp>
#include <pairedfd/random.hpp>
#include <pairedfd/simgen.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pairedfd;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "pairedfd_commands_test";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const auto path = scratch(name);
    std::ofstream(path) << text;
    return path;
}

// 34 subjects on a 3-point grid; 23 have a positive constant difference.
std::string sign_split_csv() {
    std::ostringstream out;
    out << "subject,condition,s_0,s_0.5,s_1\n";
    for (int i = 0; i < 34; ++i) {
        const double d = i < 23 ? 1.0 + i : -1.0 - i;
        out << "p" << i << ",0,0,0,0\n";
        out << "p" << i << ",1," << d << ',' << d << ',' << d << '\n';
    }
    return out.str();
}

}  // namespace

TEST(CmdTest, SignSplitReproducesPublishedSignTestP) {
    const auto file = write_file("split.csv", sign_split_csv());
    TestOptions options;
    options.method = "fst-int";
    options.no_preprocess = true;
    std::ostringstream out;
    EXPECT_EQ(cmd_test(file, options, out), 0);
    EXPECT_NE(out.str().find("23 (0.0576)"), std::string::npos) << out.str();
    EXPECT_EQ(out.str().find("sdrt"), std::string::npos);
}

TEST(CmdTest, RowsComeInFixedOrder) {
    const auto paired = [] {
        std::istringstream in(sign_split_csv());
        return read_paired_csv(in);
    }();
    TestOptions options;
    options.no_preprocess = true;
    const auto all = run_tests(paired, options);
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].method, Method::Sdrt);
    EXPECT_EQ(all[1].method, Method::FstInt);
    EXPECT_EQ(all[2].method, Method::FstSuff);
    std::ostringstream a, b;
    render_outcomes(a, all);
    std::vector<MethodOutcome> reassembled;
    for (const char* m : {"fst-suff", "sdrt", "fst-int"}) {
        options.method = m;
        reassembled.push_back(run_tests(paired, options).front());
    }
    std::sort(reassembled.begin(), reassembled.end(),
              [](const auto& x, const auto& y) { return x.method < y.method; });
    render_outcomes(b, reassembled);
    EXPECT_EQ(a.str(), b.str());
}

TEST(CmdTest, DuplicatedConditionsGiveAllZeroScores) {
    std::ostringstream csv;
    csv << "subject,condition,s_0,s_1,s_2,s_3\n";
    for (int i = 0; i < 6; ++i) {
        for (int c = 0; c < 2; ++c) csv << "s" << i << ',' << c << ',' << i << ",1," << i * i << ",-2\n";
    }
    const auto file = write_file("dup.csv", csv.str());
    std::ostringstream out;
    EXPECT_EQ(cmd_test(file, TestOptions{}, out), 1);
    EXPECT_NE(out.str().find("AllZeroScores"), std::string::npos) << out.str();
}

TEST(CmdTest, MissingCellsNeedPreprocessing) {
    const auto file = write_file("na.csv",
                                 "subject,condition,s_0,s_1\nA,0,1,NA\nA,1,2,3\nB,0,1,1\nB,1,0,0\nC,0,1,1\nC,1,2,2\n");
    TestOptions options;
    options.no_preprocess = true;
    std::ostringstream out;
    EXPECT_THROW((void)cmd_test(file, options, out), PreprocessRequired);
    options.method = "nope";
    options.no_preprocess = false;
    EXPECT_THROW((void)cmd_test(file, options, out), SchemaError);
}

TEST(CmdTest, StrongShiftIsDetectedByEveryMethod) {
    SimConfig c;
    c.n = 60;
    c.delta = DeltaShape::Linear;
    c.xi = 3.0;
    RandomStream rng(c.seed, 0);
    std::ofstream(scratch("shift.csv")) << [&] {
        std::ostringstream s;
        write_paired_csv(s, generate_dataset(rng, c));
        return s.str();
    }();
    const auto paired = read_paired_csv(scratch("shift.csv"));
    for (const auto& o : run_tests(paired, TestOptions{})) {
        ASSERT_TRUE(o.report.has_value()) << o.error;
        EXPECT_LT(o.report->p_value, 0.05) << to_string(o.method);
    }
}

TEST(CmdSimulate, DeterministicOutput) {
    const auto manifest = parse_manifest("n = 10\nS = 12\nK = 40\nreplicates = 5, 1\nxi = 0, 1\nseed = 9\n");
    std::ostringstream a, b;
    EXPECT_EQ(cmd_simulate(manifest, 1, a), 0);
    EXPECT_EQ(cmd_simulate(manifest, 2, b), 0);
    EXPECT_EQ(a.str(), b.str());
    std::istringstream lines(a.str());
    std::string line;
    int rows = -1;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 12);
}

TEST(CmdGenerate, WritesTheReplayedReplicate) {
    SimConfig c;
    c.n = 5;
    c.grid_size = 8;
    c.truncation = 20;
    std::ostringstream out;
    EXPECT_EQ(cmd_generate(c, 3, out), 0);
    std::istringstream in(out.str());
    EXPECT_EQ(read_paired_csv(in), replay_replicate(c, 3));
}

TEST(CmdSmooth, FillsMissingCells) {
    SimConfig c;
    c.n = 20;
    c.truncation = 50;
    c.missing_frac = 0.1;
    RandomStream rng(4, 4);
    write_paired_csv(scratch("holes.csv"), generate_dataset(rng, c));
    std::ostringstream out;
    EXPECT_EQ(cmd_smooth(scratch("holes.csv"), 0.99, std::nullopt, out), 0);
    std::istringstream in(out.str());
    const auto smoothed = read_paired_csv(in);
    EXPECT_FALSE(smoothed.condition0().has_missing());
    EXPECT_FALSE(smoothed.condition1().has_missing());
}
