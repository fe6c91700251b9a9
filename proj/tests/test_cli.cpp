// Drives the built command-line tool as a subprocess.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(AWLSSVM_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("awlssvm_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

std::string report_doc(const std::string& method, const std::vector<std::string>& datasets,
                       double base, double step) {
  std::string docs = "[";
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const double mean = base + step * static_cast<double>(i);
    docs += (i ? "," : "") + std::string("{\"dataset\":\"") + datasets[i] +
            "\",\"reports\":[{\"dataset\":\"" + datasets[i] + "\",\"method\":\"" + method +
            "\",\"mean\":" + std::to_string(mean) + ",\"std\":0.0,\"scores\":[" +
            std::to_string(mean) + "]}]}";
  }
  return docs + "]";
}

}  // namespace

TEST_F(Cli, TrainWritesModel) {
  ASSERT_EQ(run("synth --out " + at("data") + " --kind separable").exit_code, 0);
  const RunResult r = run("train --data " + at("data") + " --out " + at("model.json"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(at("model.json")));
}

TEST_F(Cli, TrainMissingViewFileIsValidationError) {
  ASSERT_EQ(run("synth --out " + at("data")).exit_code, 0);
  fs::remove(at("data/view1.csv"));
  const RunResult r = run("train --data " + at("data") + " --out " + at("m.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("view1.csv"), std::string::npos) << r.output;
}

TEST_F(Cli, TrainRejectsBadBeta) {
  ASSERT_EQ(run("synth --out " + at("data")).exit_code, 0);
  write("cfg.json", R"({"beta": 1.5})");
  const RunResult r =
      run("train --data " + at("data") + " --config " + at("cfg.json") + " --out " + at("m.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("beta"), std::string::npos) << r.output;
  EXPECT_FALSE(fs::exists(at("m.json")));
}

TEST_F(Cli, PredictRoundTrip) {
  ASSERT_EQ(run("synth --out " + at("data") + " --kind separable --per-class 20").exit_code, 0);
  ASSERT_EQ(run("train --data " + at("data") + " --out " + at("m.json")).exit_code, 0);
  const RunResult r =
      run("predict --model " + at("m.json") + " --data " + at("data") + " --out " + at("p.csv"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("balanced_accuracy=1.000000"), std::string::npos) << r.output;
  std::istringstream csv(slurp(at("p.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "sample_index,predicted_class,score_0,score_1,score_2");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 60);
}

TEST_F(Cli, PredictViewCountMismatch) {
  ASSERT_EQ(run("synth --out " + at("two")).exit_code, 0);
  ASSERT_EQ(run("synth --out " + at("five") + " --kind msrc-shape").exit_code, 0);
  ASSERT_EQ(run("train --data " + at("two") + " --out " + at("m.json")).exit_code, 0);
  const RunResult r =
      run("predict --model " + at("m.json") + " --data " + at("five") + " --out " + at("p.csv"));
  EXPECT_EQ(r.exit_code, 1) << r.output;
}

TEST_F(Cli, BenchmarkReportsAndIsDeterministic) {
  ASSERT_EQ(run("synth --out " + at("data") + " --per-class 12").exit_code, 0);
  write("cfg.json", R"({"search": {"budget": 2}})");
  const std::string args = "benchmark --data " + at("data") + " --methods aw,bsv,early,late --config " +
                           at("cfg.json") + " --out ";
  const RunResult first = run(args + at("r1.json"));
  ASSERT_EQ(first.exit_code, 0) << first.output;
  const RunResult second = run(args + at("r2.json"));
  ASSERT_EQ(second.exit_code, 0);
  EXPECT_EQ(slurp(at("r1.json")), slurp(at("r2.json")));
  EXPECT_EQ(first.output, second.output);
  const std::string report = slurp(at("r1.json"));
  for (const char* m : {"\"aw\"", "\"bsv\"", "\"early\"", "\"late\""}) {
    EXPECT_NE(report.find(std::string("\"method\": ") + m), std::string::npos) << m;
  }
  EXPECT_NE(first.output.find("(±"), std::string::npos);
}

TEST_F(Cli, BenchmarkUnknownMethod) {
  ASSERT_EQ(run("synth --out " + at("data")).exit_code, 0);
  const RunResult r =
      run("benchmark --data " + at("data") + " --methods aw,mumbo --out " + at("r.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("mumbo"), std::string::npos);
}

TEST_F(Cli, CompareUniformlyBetter) {
  const std::vector<std::string> nine{"d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9"};
  write("a.json", report_doc("aw", nine, 0.80, 0.01));
  write("b.json", report_doc("bsv", nine, 0.70, 0.005));
  const RunResult r = run("compare --reports " + at("a.json") + " " + at("b.json"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("T=0.0  p=0.00390625"), std::string::npos) << r.output;
}

TEST_F(Cli, CompareIdenticalAndMismatched) {
  const std::vector<std::string> three{"x", "y", "z"};
  write("a.json", report_doc("aw", three, 0.8, 0.01));
  const RunResult same = run("compare --reports " + at("a.json") + " " + at("a.json"));
  EXPECT_EQ(same.exit_code, 0);
  EXPECT_NE(same.output.find("T=0.0  p=1"), std::string::npos) << same.output;

  write("b.json", report_doc("aw", {"x", "y", "w"}, 0.8, 0.01));
  EXPECT_EQ(run("compare --reports " + at("a.json") + " " + at("b.json")).exit_code, 1);
}

TEST_F(Cli, CompareAcceptsDirectories) {
  fs::create_directories(dir_ / "A");
  fs::create_directories(dir_ / "B");
  write("A/one.json", report_doc("aw", {"p", "q"}, 0.9, 0.0));
  write("B/one.json", report_doc("late", {"p", "q"}, 0.5, 0.1));
  const RunResult r = run("compare --reports " + at("A") + " " + at("B"));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("A:aw vs B:late"), std::string::npos) << r.output;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("train --data nowhere").exit_code, 1);
  EXPECT_EQ(run("--help").exit_code, 0);
}
