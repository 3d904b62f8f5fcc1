#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "support.hpp"

namespace tmln {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

CliRun tmln(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / ("tmln_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter)), err = dir / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = env + " " + TMLN_CLI + " " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = testing::read_text(out.string());
  r.err = testing::read_text(err.string());
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / (std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p.string();
}

const std::string kOresme = testing::data_path("oresme.tmln");

TEST(CliValidate, ExitCodes) {
  EXPECT_EQ(tmln("validate " + kOresme).status, 0);
  const CliRun bad = tmln("validate " + write_temp("bad.tmln",
                                                "sort Concept\ntimeline 1300 1400\nconst NO : Concept\n"
                                                "pred Person(Concept)\nfact Person(NO,1320,1382) : 1.3\n"));
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.err.find("weight outside [0,1]"), std::string::npos);
  EXPECT_EQ(std::count(bad.err.begin(), bad.err.end(), '\n'), 1);
  EXPECT_EQ(tmln("validate /nonexistent/kb.tmln").status, 2);
  EXPECT_EQ(tmln("frobnicate").status, 2);
}

TEST(CliGround, OresmeWeights) {
  const CliRun r = tmln("ground " + kOresme);
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("Studied(NO, CoN, 1340, 1354) => PeasantFamily(NO, TMIN, TMAX) } : 0.4"), std::string::npos);
  EXPECT_NE(r.out.find("Studied(NO, CoN, 1355, 1360) => PeasantFamily(NO, TMIN, TMAX) } : 0.5"), std::string::npos);
  EXPECT_NE(r.out.find("=> !PeasantFamily(NO, TMIN, TMAX) } : 0.8"), std::string::npos);
  const auto j = nlohmann::json::parse(tmln("ground --json " + kOresme).out);
  EXPECT_EQ(j["facts"].size(), 6u);
  EXPECT_EQ(j["rules"].size(), 3u);
}

TEST(CliMap, RowOneConclusion) {
  const CliRun r = tmln("map " + kOresme + " --delta tCon --sigma id --theta sum --query 'PeasantFamily(*,*,*)'");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("=> !PeasantFamily(NO, TMIN, TMAX) : 0.8"), std::string::npos);
  EXPECT_NE(r.out.find("strength 5.2\n"), std::string::npos);
}

TEST(CliMap, EmptyKb) {
  const CliRun r = tmln("map " + write_temp("empty.tmln", "timeline 0 0\n") + " --json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["maps"].size(), 1u);
  EXPECT_TRUE(j["maps"][0]["formulae"].empty());
  EXPECT_EQ(j["maps"][0]["strength"], "0");
}

TEST(CliMap, Errors) {
  EXPECT_EQ(tmln("map " + kOresme + " --delta xCon").status, 1);
  EXPECT_EQ(tmln("map " + kOresme + " --sigma thresh:1.5").status, 1);
  const CliRun bounded = tmln("map " + kOresme, "TMLN_EXHAUSTIVE_BOUND=5");
  EXPECT_EQ(bounded.status, 1);
  EXPECT_NE(bounded.err.find("--pruned"), std::string::npos);
  EXPECT_EQ(tmln("map " + kOresme + " --pruned", "TMLN_EXHAUSTIVE_BOUND=5").status, 0);
  EXPECT_EQ(tmln("map " + kOresme + " --bound 9", "TMLN_EXHAUSTIVE_BOUND=5").status, 0);
}

TEST(CliSweep, GoldenTable) {
  const CliRun r = tmln("sweep " + kOresme + " " + testing::data_path("table3.sweep") +
                     " --query 'PeasantFamily(*,*,*)'");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, testing::read_text(std::string(TMLN_GOLDEN_DIR) + "/table3_sweep.txt"));
  const CliRun j = tmln("sweep " + kOresme + " " + testing::data_path("table3.sweep") +
                     " --query 'PeasantFamily(*,*,*)' --json");
  EXPECT_EQ(j.out, testing::read_text(std::string(TMLN_GOLDEN_DIR) + "/table3_sweep.json"));
}

TEST(CliSweep, SingleConfigEqualsMap) {
  const std::string sweep = write_temp("one.sweep", "delta=pCon sigma=rule theta=sum_alpha:2\n");
  for (const std::string extra : {"", " --json", " --full --query 'Studied(*,*,*,*)'"}) {
    const CliRun a = tmln("sweep " + kOresme + " " + sweep + extra);
    const CliRun b = tmln("map " + kOresme + " --delta pCon --sigma rule --theta sum_alpha:2" + extra);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out) << extra;
  }
}

TEST(CliSweep, MalformedFile) {
  EXPECT_EQ(tmln("sweep " + kOresme + " " + write_temp("bad.sweep", "delta=tCon\n")).status, 2);
}

TEST(CliCheck, SeededRunIsReproducible) {
  const CliRun a = tmln("check --seed 4 --trials 40"), b = tmln("check --seed 4 --trials 40");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.status, b.status);
  EXPECT_NE(a.out.find("complementarity: pass"), std::string::npos);
}

TEST(CliCheck, MutantSurfacesThetaB) {
  const CliRun r = tmln("check --mutant 'Theta-(b)' --trials 100");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("Theta-(b): FAIL"), std::string::npos);
  EXPECT_EQ(tmln("check --mutant nonsense --trials 10").status, 1);
}

TEST(CliOracle, OresmeAndEmptyMatch) {
  const CliRun r = tmln("oracle-compare " + kOresme);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
  EXPECT_EQ(tmln("oracle-compare " + write_temp("empty2.tmln", "timeline 0 0\n")).status, 0);
  EXPECT_EQ(tmln("oracle-compare " + kOresme + " --delta pInc --sigma thresh:0.3 --theta psum").status, 0);
}

}  // namespace
}  // namespace tmln
