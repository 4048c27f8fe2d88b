#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        root_ = fs::temp_directory_path() /
                (std::string("gestream_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    /// Runs the CLI with stdout/stderr discarded; returns its exit status.
    int cli(const std::string& args) const
    {
        const std::string cmd = std::string(GESTREAM_CLI) + " " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string p(const std::string& rel) const { return (root_ / rel).string(); }

    static std::string slurp(const fs::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    static nlohmann::json report(const fs::path& path) { return nlohmann::json::parse(slurp(path)); }

    void write(const std::string& rel, const std::string& content) const { std::ofstream(root_ / rel) << content; }

    fs::path root_;
};

constexpr const char* kSmallGen = "--seed 42 --videos 4 --gestures 4 --classes 10";

} // namespace

TEST_F(CliTest, GenWritesFourFilesDeterministically)
{
    ASSERT_EQ(cli("gen --out " + p("a") + " " + kSmallGen), 0);
    ASSERT_EQ(cli("gen --out " + p("b") + " " + kSmallGen), 0);
    for (const char* f : {"detector.jsonl", "classifier.jsonl", "annotations.jsonl", "manifest.ini"}) {
        ASSERT_TRUE(fs::exists(root_ / "a" / f)) << f;
        EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
    }
    EXPECT_EQ(std::distance(fs::directory_iterator(root_ / "a"), fs::directory_iterator{}), 4);
}

TEST_F(CliTest, ManifestRegeneratesCorpus)
{
    ASSERT_EQ(cli("gen --out " + p("a") + " --seed 7 --videos 3 --noise 0.02 --classes 12"), 0);
    ASSERT_EQ(cli("gen --out " + p("b") + " --config " + p("a/manifest.ini")), 0);
    EXPECT_EQ(slurp(root_ / "a" / "classifier.jsonl"), slurp(root_ / "b" / "classifier.jsonl"));
    EXPECT_EQ(slurp(root_ / "a" / "manifest.ini"), slurp(root_ / "b" / "manifest.ini"));
}

TEST_F(CliTest, FlagsOverrideConfigFile)
{
    write("c.ini", "# comment\nvideos = 5\nclasses = 6\n");
    ASSERT_EQ(cli("gen --out " + p("a") + " --config " + p("c.ini") + " --videos 2"), 0);
    const auto manifest = slurp(root_ / "a" / "manifest.ini");
    EXPECT_NE(manifest.find("videos = 2\n"), std::string::npos);
    EXPECT_NE(manifest.find("classes = 6\n"), std::string::npos);

    write("bad.ini", "no_such_key = 1\n");
    EXPECT_EQ(cli("gen --out " + p("x") + " --config " + p("bad.ini")), 1);
}

TEST_F(CliTest, ValidationAndIoExitCodes)
{
    EXPECT_EQ(cli("gen --out " + p("a") + " --videos 0"), 1);
    EXPECT_EQ(cli("gen"), 1);
    EXPECT_EQ(cli("frobnicate"), 1);
    EXPECT_EQ(cli("run --data " + p("missing") + " --out " + p("r")), 2);
    ASSERT_EQ(cli("gen --out " + p("a") + " " + kSmallGen), 0);
    EXPECT_EQ(cli("run --data " + p("a") + " --out " + p("r") + " --detector_window 64"), 1);
    EXPECT_EQ(cli("run --data " + p("a") + " --out " + p("r") + " --num_classes 11"), 1);
    EXPECT_EQ(cli("run --data " + p("a") + " --out " + p("r") + " --filter gaussian"), 1);
}

TEST_F(CliTest, RunProducesReportsAndTraces)
{
    ASSERT_EQ(cli("gen --out " + p("a") + " " + kSmallGen), 0);
    ASSERT_EQ(cli("run --data " + p("a") + " --out " + p("r1") + " --trace"), 0);
    ASSERT_EQ(cli("run --data " + p("a") + " --out " + p("r2") + " --trace"), 0);

    const auto rep = report(root_ / "r1" / "report.json");
    EXPECT_TRUE(rep["aggregate"]["levenshtein_accuracy"].is_number());
    EXPECT_EQ(rep["corpus"]["videos"], 4);
    EXPECT_EQ(rep["config"]["num_classes"], 10);
    EXPECT_EQ(std::distance(fs::directory_iterator(root_ / "r1" / "traces"), fs::directory_iterator{}), 4);

    for (const char* f : {"report.json", "events.jsonl", "results.jsonl", "traces/v000.csv"}) {
        EXPECT_EQ(slurp(root_ / "r1" / f), slurp(root_ / "r2" / f)) << f;
    }
    EXPECT_TRUE(fs::exists(root_ / "r1" / "traces" / "v000.csv"));
    const auto header = slurp(root_ / "r1" / "traces" / "v000.csv").substr(0, 60);
    EXPECT_EQ(header.rfind("t,raw_detector,filtered,mode,decision,j,weight", 0), 0u);
}

TEST_F(CliTest, EvalReproducesRunAccuracy)
{
    ASSERT_EQ(cli("gen --out " + p("a") + " " + kSmallGen + " --noise 0.08 --prep_ambiguity 0.6"), 0);
    ASSERT_EQ(cli("run --data " + p("a") + " --out " + p("r") + " --tau_early 0.25"), 0);
    ASSERT_EQ(cli("eval --events " + p("r/events.jsonl") + " --annotations " + p("a/annotations.jsonl") +
                  " --out " + p("e")),
              0);
    const auto run = report(root_ / "r" / "report.json");
    const auto ev = report(root_ / "e" / "report.json");
    EXPECT_EQ(run["aggregate"]["levenshtein_accuracy"], ev["aggregate"]["levenshtein_accuracy"]);
    EXPECT_EQ(run["aggregate"]["early_detection"], ev["aggregate"]["early_detection"]);
}

TEST_F(CliTest, EvalWorkedExample)
{
    std::string ann, evs;
    const int gt[] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    const int pred[] = {1, 2, 7, 4, 5, 6, 6, 7, 8, 9};
    for (int i = 0; i < 9; ++i) {
        ann += "{\"video\":\"w\",\"class\":" + std::to_string(gt[i]) + ",\"start\":" + std::to_string(100 * i) +
               ",\"end\":" + std::to_string(100 * i + 40) + "}\n";
    }
    for (int i = 0; i < 10; ++i) {
        evs += "{\"video\":\"w\",\"class\":" + std::to_string(pred[i]) + ",\"frame\":" + std::to_string(90 * i + 20) +
               ",\"kind\":\"late\",\"score\":0.5}\n";
    }
    write("ann.jsonl", ann);
    write("ev.jsonl", evs);
    ASSERT_EQ(cli("eval --events " + p("ev.jsonl") + " --annotations " + p("ann.jsonl") + " --out " + p("e")), 0);
    const auto rep = report(root_ / "e" / "report.json");
    EXPECT_NEAR(rep["aggregate"]["levenshtein_accuracy"].get<double>(), 77.78, 0.01);
    EXPECT_EQ(rep["videos"][0]["distance"], 2);
}

TEST_F(CliTest, EvalEmptyEventsScoresZero)
{
    ASSERT_EQ(cli("gen --out " + p("a") + " " + kSmallGen), 0);
    write("none.jsonl", "");
    ASSERT_EQ(cli("eval --events " + p("none.jsonl") + " --annotations " + p("a/annotations.jsonl") + " --out " +
                  p("e")),
              0);
    const auto rep = report(root_ / "e" / "report.json");
    EXPECT_EQ(rep["aggregate"]["levenshtein_accuracy"].get<double>(), 0.0);
    for (const auto& v : rep["videos"]) EXPECT_EQ(v["distance"], v["gt"].size());
}

TEST_F(CliTest, SweepRowCounts)
{
    ASSERT_EQ(cli("gen --out " + p("a") + " " + kSmallGen), 0);
    ASSERT_EQ(cli("sweep --data " + p("a") + " --out " + p("s")), 0);
    ASSERT_EQ(cli("sweep --data " + p("a") + " --out " + p("one") + " --taus 0.4"), 0);
    const auto count_rows = [&](const fs::path& f) {
        std::istringstream in(slurp(f));
        std::string line;
        int n = -1;  // header
        while (std::getline(in, line)) ++n;
        return n;
    };
    EXPECT_EQ(count_rows(root_ / "s" / "sweep.csv"), 9);
    EXPECT_EQ(count_rows(root_ / "one" / "sweep.csv"), 1);
    const std::string header =
        "tau_early,levenshtein_accuracy,mean_early_frames,median_early_frames,matched,duplicates,misses\n";
    EXPECT_EQ(slurp(root_ / "s" / "sweep.csv").substr(0, header.size()), header);
    EXPECT_TRUE(report(root_ / "s" / "sweep_summary.json").contains("mean_early_frames_non_increasing"));
}

TEST_F(CliTest, SweepOnNoiselessCorpusIsMonotone)
{
    ASSERT_EQ(cli("gen --out " + p("a") + " " + kSmallGen + " --noise 0 --prep_ambiguity 0"), 0);
    ASSERT_EQ(cli("sweep --data " + p("a") + " --out " + p("s")), 0);
    EXPECT_TRUE(report(root_ / "s" / "sweep_summary.json")["mean_early_frames_non_increasing"].get<bool>());
}
