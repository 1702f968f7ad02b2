// Runs the rggham binary end to end through the shell.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("rggham_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string path(const std::string& name) { return (dir_ / name).string(); }

  static CliRun run(const std::string& args) {
    const std::string out_file = path("stdout.txt");
    const std::string cmd = std::string(RGGHAM_CLI) + " " + args + " > " + out_file + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out_file)};
  }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::size_t lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
  }

  static fs::path dir_;
};

fs::path Cli::dir_;

TEST_F(Cli, Alpha) {
  EXPECT_EQ(run("alpha 2").out, "3.14159265358979\n");
  EXPECT_EQ(run("alpha inf").out, "4\n");
  EXPECT_EQ(run("alpha 1").out, "2\n");
  EXPECT_EQ(run("alpha 0.5").code, 2);
  const auto j = nlohmann::json::parse(run("--json alpha 2").out);
  EXPECT_DOUBLE_EQ(j["alpha"].get<double>(), 3.141592653589793);
}

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(run("gen -n 1000 -p 2 --mult 2.0 --seed 7 -o " + path("a.csv")).code, 0);
  ASSERT_EQ(run("gen -n 1000 -p 2 --mult 2.0 --seed 7 -o " + path("b.csv")).code, 0);
  const std::string a = slurp(path("a.csv"));
  EXPECT_EQ(lines(a), 1001u);
  EXPECT_EQ(a.rfind("x,y\n", 0), 0u);
  EXPECT_EQ(a, slurp(path("b.csv")));
  EXPECT_NE(slurp(path("stderr.txt")).find("threshold_radius"), std::string::npos);
}

TEST_F(Cli, GenRejectsBadFlags) {
  EXPECT_EQ(run("gen -n 0 --mult 2").code, 2);
  EXPECT_EQ(run("gen -n 100").code, 2);
  EXPECT_EQ(run("gen -n 100 --mult 2 --r 0.1").code, 2);
  EXPECT_EQ(run("gen -n 100 -p 0.5 --mult 2").code, 2);
  EXPECT_EQ(run("gen -n 100 --eps-above 4 -p 2").code, 2);
  EXPECT_EQ(run("gen -n 100 --mult 2 -o /nonexistent-dir/x.csv").code, 3);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(Cli, HamThenVerify) {
  ASSERT_EQ(run("gen -n 120000 -p inf --r 0.25 --seed 3 -o " + path("dense.csv")).code, 0);
  const CliRun ham = run("ham " + path("dense.csv") + " -p inf -r 0.25 -o " + path("dense.cyc") + " --dump-graph " +
                      path("graph.txt"));
  ASSERT_EQ(ham.code, 0);
  EXPECT_EQ(lines(slurp(path("dense.cyc"))), 120000u);
  EXPECT_GT(lines(slurp(path("graph.txt"))), 0u);

  const CliRun ok = run("verify " + path("dense.csv") + " " + path("dense.cyc") + " -p inf -r 0.25");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out)["valid"], true);

  // Duplicate the first entry over the second.
  std::ifstream in(path("dense.cyc"));
  std::string first, second;
  std::getline(in, first);
  std::getline(in, second);
  std::ofstream dup(path("dup.cyc"));
  dup << first << '\n' << first << '\n' << in.rdbuf();
  dup.close();
  const CliRun bad = run("verify " + path("dense.csv") + " " + path("dup.cyc") + " -p inf -r 0.25");
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(nlohmann::json::parse(bad.out)["violation"]["kind"], "NotPermutation");

  std::ofstream trunc(path("trunc.cyc"));
  trunc << first << '\n' << second << '\n';
  trunc.close();
  EXPECT_EQ(run("verify " + path("dense.csv") + " " + path("trunc.cyc") + " -p inf -r 0.25").code, 2);

  // The same cycle checked at a much smaller radius has long edges.
  EXPECT_EQ(run("verify " + path("dense.csv") + " " + path("dense.cyc") + " -p inf -r 0.01").code, 1);
}

TEST_F(Cli, HamFailures) {
  ASSERT_EQ(run("gen -n 3000 --mult 0.5 --seed 1 -o " + path("sub.csv")).code, 0);
  const CliRun sub = run("ham " + path("sub.csv") + " -r 0.005");
  EXPECT_EQ(sub.code, 10);
  EXPECT_EQ(nlohmann::json::parse(sub.out)["reason"], "Disconnected");

  ASSERT_EQ(run("gen -n 10000 --mult 2 --seed 1 -o " + path("desk.csv")).code, 0);
  const CliRun desk = run("ham " + path("desk.csv") + " -r 0.0343");
  EXPECT_EQ(desk.code, 11);
  EXPECT_EQ(nlohmann::json::parse(desk.out)["reason"], "HookMissing");

  std::ofstream two(path("two.csv"));
  two << "x,y\n0.1,0.1\n0.2,0.2\n";
  two.close();
  EXPECT_EQ(run("ham " + path("two.csv") + " -r 0.5").code, 2);

  std::ofstream junk(path("junk.csv"));
  junk << "x,y\n0.1;0.1\n";
  junk.close();
  EXPECT_EQ(run("ham " + path("junk.csv") + " -r 0.5").code, 2);
  EXPECT_EQ(run("ham " + path("missing.csv") + " -r 0.5").code, 3);
}

TEST_F(Cli, SweepAndBench) {
  const CliRun empty = run("sweep --n 1000");
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(lines(empty.out), 1u);

  const CliRun csv = run("sweep --n 500,800 --mult 0.7,2 --trials 2 --workers 2");
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(lines(csv.out), 5u);

  const CliRun json = run("--json sweep --n 500 --mult 1 --trials 2");
  EXPECT_EQ(json.code, 0);
  EXPECT_EQ(nlohmann::json::parse(json.out).size(), 1u);

  const CliRun bench = run("--json bench --n 2000,4000 --trials 2");
  EXPECT_EQ(bench.code, 0);
  EXPECT_EQ(nlohmann::json::parse(bench.out)["ratios"].size(), 1u);
  EXPECT_EQ(run("bench --n 4000,2000").code, 2);
}

}  // namespace
