#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fairdiv/io.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fairdiv_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Outcome run(const std::string& args) {
    Outcome r;
    const std::string cmd = std::string(FAIRDIV_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  fs::path dir_;
};

constexpr const char* kBiValued =
    R"({"kind":"chores","divisibility":"divisible","values":[["3","1","1","3"],["1","3","3","1"],["1","1","3","3"]]})";

TEST_F(Cli, BiValuedHappyPath) {
  const std::string inst = file("inst.json", kBiValued);
  const Outcome r = run("bivalued run " + inst + " --emit-certificate");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"certificate\""), std::string::npos);
  EXPECT_NE(r.out.find("\"allocation\""), std::string::npos);
}

TEST_F(Cli, VerifyFindingExitsOne) {
  const std::string inst = file("inst.json", R"({"kind":"chores","values":[["1","1"],["1","1"]]})");
  const std::string bad = file("alloc.json", R"({"bundles":[[0,1],[]]})");
  const Outcome r = run("verify ef1 " + inst + " " + bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witnesses"), std::string::npos);
  const std::string good = file("good.json", R"({"bundles":[[0],[1]]})");
  EXPECT_EQ(run("verify ef1 " + inst + " " + good).code, 0);
}

TEST_F(Cli, EfficiencyTable) {
  const Outcome r = run("--format table experiment efficiency --k 3 --p 10 --q 1 --mechanism equal-split");
  EXPECT_EQ(r.code, 0);
  std::size_t count = 0;
  for (std::size_t at = r.out.find("2/11"); at != std::string::npos; at = r.out.find("2/11", at + 1)) ++count;
  EXPECT_GE(count, 3U);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("run").code, 2);
  const std::string broken = file("broken.json", "{\"kind\":\"chores\",");
  EXPECT_EQ(run("run " + broken + " --mechanism ps").code, 2);
  const std::string negative = file("neg.json", R"({"kind":"chores","values":[["-1"]]})");
  EXPECT_EQ(run("run " + negative + " --mechanism ps").code, 2);
  const std::string inst = file("inst.json", kBiValued);
  EXPECT_EQ(run("run " + inst + " --mechanism nope").code, 2);
  EXPECT_EQ(run("run " + path("missing.json") + " --mechanism ps").code, 2);
}

TEST_F(Cli, EmittedAllocationsReparse) {
  const std::string inst = file("inst.json", kBiValued);
  for (const char* mech : {"ps", "equal-split", "bivalued", "ps-proportional"}) {
    const Outcome r = run("run " + inst + " --mechanism " + mech);
    ASSERT_EQ(r.code, 0) << mech;
    EXPECT_EQ(fairdiv::io::write_fractional(fairdiv::io::read_fractional(r.out)), r.out);
  }
  const Outcome u = run("run " + inst + " --mechanism utilitarian");
  EXPECT_EQ(fairdiv::io::write_integral(fairdiv::io::read_integral(u.out, 4)), u.out);
}

TEST_F(Cli, LotteryPipeline) {
  const std::string inst = file("inst.json", kBiValued);
  ASSERT_EQ(run("-o " + path("ps.json") + " ps run " + inst).code, 0);
  const Outcome lot = run("-o " + path("lottery.json") + " lottery implement " + inst);
  ASSERT_EQ(lot.code, 0);
  const Outcome alloc = run("-o " + path("alloc.json") + " run " + inst + " --mechanism ps");
  ASSERT_EQ(alloc.code, 0);
  EXPECT_EQ(run("lottery verify " + inst + " " + path("alloc.json") + " " + path("lottery.json")).code, 0);
  const Outcome a = run("--seed 9 lottery sample " + inst + " " + path("lottery.json"));
  const Outcome b = run("--seed 9 lottery sample " + inst + " " + path("lottery.json"));
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, ManifestReplayIsByteIdentical) {
  const std::string first = path("first.json");
  ASSERT_EQ(run("--seed 5 --manifest " + path("m.json") + " -o " + first +
                " scan fairness --mechanism utilitarian --notion mms --kind chores --items 3 --random 50")
                .code,
            0);
  const std::string before = slurp(first);
  fs::remove(first);
  EXPECT_EQ(run("replay " + path("m.json")).code, 0);
  EXPECT_EQ(slurp(first), before);
  EXPECT_FALSE(before.empty());
}

TEST_F(Cli, JobsDoNotChangeOutput) {
  const std::string args = "scan fairness --mechanism utilitarian --notion ef1 --kind chores --items 3 --grid 0,1,2";
  const Outcome one = run("--jobs 1 " + args);
  const Outcome four = run("--jobs 4 " + args);
  EXPECT_EQ(one.out, four.out);
  EXPECT_NE(one.out.find("\"instances\": 729"), std::string::npos);
}

TEST_F(Cli, TransformsAndPe) {
  const std::string inst = file("inst.json", R"({"kind":"chores","divisibility":"divisible","values":[["1","0"],["1","0"],["0","1"]]})");
  EXPECT_EQ(run("transform complement " + inst + " --mechanism equal-split").code, 0);
  EXPECT_EQ(run("transform dual " + inst).code, 0);
  const std::string cfg = file("pe.json", R"({"x1":[0,1],"offers1":[[0],[1]],"offers2":[[]]})");
  const std::string two = file("two.json", R"({"kind":"chores","values":[["1","2"],["2","1"]]})");
  EXPECT_EQ(run("pe validate " + cfg).code, 0);
  EXPECT_EQ(run("pe run " + cfg + " " + two).code, 0);
  EXPECT_EQ(run("pe dualize " + cfg).code, 0);
  EXPECT_EQ(run("transform swap " + two + " --mechanism pe --config " + cfg).code, 0);
  const std::string bad = file("bad.json", R"({"x1":[0,1],"offers1":[[0,1]],"offers2":[[]]})");
  EXPECT_EQ(run("pe validate " + bad).code, 1);
  EXPECT_EQ(run("audit truthfulness " + two + " --mechanism pe --config " + cfg).code, 0);
}

}  // namespace
