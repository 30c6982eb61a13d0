#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "nestchase/io.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string(NESTCHASE_CLI_PATH) + " " + args + " 2>/dev/null";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path workdir() {
  const fs::path dir = fs::temp_directory_path() / "nestchase_cli_test";
  fs::create_directories(dir);
  return dir;
}

TEST(Cli, GenOptRunReport) {
  const fs::path dir = workdir();
  const fs::path inst = dir / "inst.json";
  ASSERT_EQ(cli("gen random --d 2 --n 15 --seed 3 -o " + inst.string()).code, 0);
  const auto loaded = nestchase::load_instance(inst);
  EXPECT_EQ(loaded.size(), 15u);

  const auto o = cli("opt " + inst.string());
  ASSERT_EQ(o.code, 0);
  EXPECT_NEAR(std::stod(o.out), nestchase::opt(loaded), 1e-12);

  const fs::path runs = dir / "runs";
  fs::remove_all(runs);
  const auto r = cli("run --alg chase --alg greedy --instance " + inst.string() + " --out-dir " + runs.string() +
                     " --jobs 2 --strict");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(runs / "chase__inst" / "trajectory.json"));
  EXPECT_TRUE(fs::exists(runs / "greedy__inst" / "report.json"));
  EXPECT_TRUE(fs::exists(runs / "summary.csv"));

  const auto rep = cli("report " + runs.string());
  ASSERT_EQ(rep.code, 0);
  EXPECT_EQ(std::count(rep.out.begin(), rep.out.end(), '\n'), 3);
}

TEST(Cli, AdversaryRun) {
  const fs::path runs = workdir() / "adv";
  const auto r = cli("run --alg ellipsoid --adversary section4 --alpha 0.5 --n 20 --out-dir " + runs.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ellipsoid,section4-a0.5-n20,2,20,"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = workdir();
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{ \"dimension\": 2, ";
  }
  EXPECT_EQ(cli("opt " + (dir / "bad.json").string()).code, 3);
  {
    std::ofstream empty(dir / "empty.json");
    empty << R"({"dimension": 1, "start": [0], "batches": [[{"a": [1], "b": 0}, {"a": [1], "b": 1, "sense": "ge"}]]})";
  }
  EXPECT_EQ(cli("opt " + (dir / "empty.json").string()).code, 2);
  EXPECT_EQ(cli("run --alg chase --instance " + (dir / "empty.json").string() + " --out-dir " +
                (dir / "empty_runs").string())
                .code,
            2);
  EXPECT_EQ(cli("run --alg nonsense --adversary section4").code, 2);
  EXPECT_EQ(cli("gen nonsense").code, 2);
}

}  // namespace
