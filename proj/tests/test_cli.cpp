#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int rc = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("opp_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("c5.ogr", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    write("k3.ogr", "3 3\n0 1\n0 2\n1 2\n");
    write("bad.ogr", "3 1\n0 7\n");
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string path(const std::string& name) { return (dir_ / name).string(); }

  static void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static Outcome run(const std::string& args) {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = std::string(OPP_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static inline fs::path dir_;
};

}  // namespace

TEST_F(Cli, PurePairOnFiveCycle) {
  const auto r = run("purepair --host " + path("c5.ogr"));
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "min_size 1\npair anticomplete; 0; 2\nsearch exact complete\n");
}

TEST_F(Cli, ContainsExitCodes) {
  auto r = run("contains --host " + path("k3.ogr") + " --pattern fox_path");
  EXPECT_EQ(r.rc, 2);
  EXPECT_EQ(r.out, "absent\n");
  r = run("contains --host " + path("c5.ogr") + " --pattern fox_path");
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "present 0 1 2\n");
  r = run("contains --host " + path("c5.ogr") + " --pattern monotone_path --k 2 --count");
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("5"), std::string::npos);
}

TEST_F(Cli, InputErrorsExitOne) {
  auto r = run("purepair --host " + path("bad.ogr"));
  EXPECT_EQ(r.rc, 1);
  EXPECT_NE(r.err.find("line 2: endpoint out of range"), std::string::npos) << r.err;
  EXPECT_EQ(run("purepair --host " + path("missing.ogr")).rc, 1);
  EXPECT_EQ(run("").rc, 1);
  EXPECT_EQ(run("gen random --n 5").rc, 1);
  EXPECT_EQ(run("--help").rc, 0);
}

TEST_F(Cli, SampledChecksNeedASeed) {
  run("gen random --n 24 --p 0.5 --seed 1 --out " + path("r24.ogr"));
  write("b3.jsonl", "[0,1,2,3,4,5,6,7]\n[8,9,10,11,12,13,14,15]\n[16,17,18,19,20,21,22,23]\n");
  const std::string base = "blockade check-resistant --host " + path("r24.ogr") + " --blockade " + path("b3.jsonl") +
                           " --phi 0.5 --mu 0.5 --check sampled";
  EXPECT_EQ(run(base).rc, 1);
  const auto a = run(base + " --seed 4");
  EXPECT_NE(a.rc, 1) << a.err;
  EXPECT_EQ(a.out, run(base + " --seed 4").out);
}

TEST_F(Cli, GenIsDeterministicAcrossThreads) {
  const auto a = run("gen random --n 200 --p 0.2 --seed 7");
  const auto b = run("gen random --n 200 --p 0.2 --seed 7 --threads 4");
  EXPECT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, 4), "200 ");
}

TEST_F(Cli, GirthReportsAndValidates) {
  const auto r = run("gen girth --n 60 --g 3 --seed 2");
  EXPECT_EQ(r.rc, 0);
  const auto tail = r.out.substr(r.out.rfind("# girth"));
  EXPECT_EQ(tail.rfind("# girth n=60 g=3 p=", 0), 0u) << tail;
  EXPECT_NE(tail.find("validated=yes"), std::string::npos);
  // The output is itself a valid OGR file.
  write("girth.ogr", r.out);
  EXPECT_EQ(run("contains --host " + path("girth.ogr") + " --pattern-file " + path("k3.ogr")).rc, 2);
}

TEST_F(Cli, TrichotomyExhaustedExitsTwo) {
  write("e3.ogr", "3 0\n");
  const auto r = run("trichotomy --host " + path("c5.ogr") + " --pattern-file " + path("e3.ogr") +
                     " --eps 0.5 --c 0.3");
  EXPECT_EQ(r.rc, 2);
  EXPECT_EQ(r.out.rfind("exhausted", 0), 0u);
}

TEST_F(Cli, ParamsPrintsColours) {
  const auto r = run("params --phi 0.5");
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.rfind("colors 3\n", 0), 0u);
}

TEST_F(Cli, ExperimentIsByteStable) {
  const std::string args = "experiment --construction random --p 0.3 --n 8 12 --seed 1 2 --c-grid 0.5";
  const auto a = run(args);
  const auto b = run(args + " --threads 4");
  EXPECT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# config ", 0), 0u);
}

TEST_F(Cli, MeasuresEmitJson) {
  write("c5b.jsonl", "[0,1]\n[2,3,4]\n");
  const auto r = run("blockade measures --host " + path("c5.ogr") + " --blockade " + path("c5b.jsonl"));
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("\"width\": 2"), std::string::npos) << r.out;
}
